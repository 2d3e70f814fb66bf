//! Rational points: total assignments of field elements to variables.

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::vars::Vars;

/// A total assignment variable -> field element.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    vars: Vars,
    field: CoefficientField,
    values: Vec<Coeff>,
}

impl Point {
    /// Builds a point from (name, value) pairs; every variable of the set
    /// must receive exactly one value.
    pub fn new(
        vars: &Vars,
        field: CoefficientField,
        assignment: impl IntoIterator<Item = (String, Coeff)>,
    ) -> Result<Self> {
        let mut values: Vec<Option<Coeff>> = vec![None; vars.len()];
        for (name, value) in assignment {
            let idx = vars.require(&name)?;
            if !field.owns(&value) {
                return Err(Error::FieldMismatch);
            }
            if values[idx].is_some() {
                return Err(Error::DuplicateVariable(name));
            }
            values[idx] = Some(value);
        }
        let mut out = Vec::with_capacity(vars.len());
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Some(c) => out.push(c),
                None => return Err(Error::MissingAssignment(vars.name(i).to_string())),
            }
        }
        Ok(Point {
            vars: vars.clone(),
            field,
            values: out,
        })
    }

    /// Builds a point directly from values indexed like the variable set.
    pub fn from_values(vars: &Vars, field: CoefficientField, values: Vec<Coeff>) -> Result<Self> {
        if values.len() != vars.len() {
            return Err(Error::VarSetMismatch);
        }
        if values.iter().any(|c| !field.owns(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Point {
            vars: vars.clone(),
            field,
            values,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn value(&self, idx: usize) -> &Coeff {
        &self.values[idx]
    }

    pub fn value_of(&self, name: &str) -> Result<&Coeff> {
        Ok(&self.values[self.vars.require(name)?])
    }

    pub fn values(&self) -> &[Coeff] {
        &self.values
    }
}
