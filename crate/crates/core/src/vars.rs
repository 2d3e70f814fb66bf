//! Ordered sets of named variables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered sequence of distinct variable names. The index of a variable
/// is stable for the life of the set.
#[derive(Clone, Debug)]
pub struct VariableSet {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
}

/// Shared handle to an immutable variable set.
pub type Vars = Arc<VariableSet>;

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Vars>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VariableSet { names, by_name }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new set with `extra` appended after the existing names.
    pub fn extend<I, S>(&self, extra: I) -> Result<Vars>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VariableSet::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.into_iter().map(Into::into)),
        )
    }

    /// A new set keeping only the names for which `keep` holds, in order.
    pub fn subset(&self, keep: impl Fn(usize) -> bool) -> Result<Vars> {
        VariableSet::new(
            self.names
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, n)| n.clone()),
        )
    }
}

impl PartialEq for VariableSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VariableSet {}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}

/// True when the two handles denote the same variable sequence.
pub fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(VariableSet::new(["x", "y", "x"]).is_err());
    }

    #[test]
    fn stable_indices() {
        let v = VariableSet::new(["x11", "y11", "t"]).unwrap();
        assert_eq!(v.index_of("y11"), Some(1));
        assert_eq!(v.name(2), "t");
        assert!(v.require("zz").is_err());
    }
}
