use std::fmt;

use crate::GeometryError;

/// What a dimension stands for in a firing domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Remaining time before a transition may fire.
    Clock,
    /// The accumulated cost.
    Cost,
    /// A symbolic timing parameter.
    Parameter,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub role: Role,
}

impl Variable {
    pub fn new(name: impl Into<String>, role: Role) -> Self {
        Variable {
            name: name.into(),
            role,
        }
    }

    pub fn clock(name: impl Into<String>) -> Self {
        Self::new(name, Role::Clock)
    }

    pub fn cost(name: impl Into<String>) -> Self {
        Self::new(name, Role::Cost)
    }

    pub fn parameter(name: impl Into<String>) -> Self {
        Self::new(name, Role::Parameter)
    }
}

/// Ordered, duplicate-free list of variables with at most one cost variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VariableSpace {
    vars: Vec<Variable>,
}

impl VariableSpace {
    pub fn new(vars: Vec<Variable>) -> Result<Self, GeometryError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(GeometryError::DuplicateVariable(v.name.clone()));
            }
        }
        if vars.iter().filter(|v| v.role == Role::Cost).count() > 1 {
            return Err(GeometryError::MultipleCostVariables);
        }
        Ok(VariableSpace { vars })
    }

    /// Convenience for tests and small examples: every name is a parameter.
    pub fn parameters<S: AsRef<str>>(names: &[S]) -> Self {
        Self::new(
            names
                .iter()
                .map(|n| Variable::parameter(n.as_ref()))
                .collect(),
        )
        .expect("duplicate parameter name")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, GeometryError> {
        self.index_of(name)
            .ok_or_else(|| GeometryError::UnknownVariable(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.role == role)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn extended(&self, extra: &[Variable]) -> Result<Self, GeometryError> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().cloned());
        Self::new(vars)
    }

    pub(crate) fn without(&self, drop: &[usize]) -> Self {
        VariableSpace {
            vars: self
                .vars
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, v)| v.clone())
                .collect(),
        }
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.name)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_two_costs() {
        assert!(matches!(
            VariableSpace::new(vec![Variable::clock("x"), Variable::parameter("x")]),
            Err(GeometryError::DuplicateVariable(_))
        ));
        assert_eq!(
            VariableSpace::new(vec![Variable::cost("c"), Variable::cost("d")]),
            Err(GeometryError::MultipleCostVariables)
        );
    }

    #[test]
    fn lookup_and_extension() {
        let s = VariableSpace::parameters(&["a", "b"]);
        assert_eq!(s.index_of("b"), Some(1));
        let t = s.extended(&[Variable::cost("c")]).unwrap();
        assert_eq!(t.indices_with_role(Role::Cost), vec![2]);
        assert!(s.extended(&[Variable::clock("a")]).is_err());
    }
}
