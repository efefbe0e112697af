use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Role a variable plays in a Perazzo form `p0 x0 + p1 x1 + p2 x2 + g(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarRole {
    XBlock,
    UvBlock,
    Plain,
}

/// Ordered list of distinct variable names. The order is the one used by
/// every monomial enumeration in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
    roles: Vec<VarRole>,
}

impl VariableSet {
    /// Builds a set and infers roles: names starting with `x` are the
    /// x-block, `u` and `v` the uv-block, anything else plain.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let roles = names.iter().map(|n| infer_role(n)).collect();
        Self::with_roles(names, roles)
    }

    pub fn with_roles(names: Vec<String>, roles: Vec<VarRole>) -> Result<Arc<Self>> {
        if names.len() != roles.len() {
            return Err(Error::InvalidVariables(format!(
                "{} names but {} roles",
                names.len(),
                roles.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(Error::InvalidVariables(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVariables(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VariableSet { names, roles }))
    }

    /// Parses a comma separated declaration such as `x0,x1,x2,u,v`.
    pub fn parse(decl: &str) -> Result<Arc<Self>> {
        Self::new(decl.split(',').map(|s| s.trim().to_string()))
    }

    /// `x0, x1, x2, u, v`: the ring of a Perazzo threefold.
    pub fn perazzo() -> Arc<Self> {
        Self::new(["x0", "x1", "x2", "u", "v"]).expect("static variable set")
    }

    /// `u, v`: the ring of binary forms.
    pub fn binary() -> Arc<Self> {
        Self::new(["u", "v"]).expect("static variable set")
    }

    /// `z0, z1, z2`: coordinates for algebraic relations among three forms.
    pub fn relation() -> Arc<Self> {
        Self::new(["z0", "z1", "z2"]).expect("static variable set")
    }

    /// Fresh parameter names `prefix0, prefix1, ...`.
    pub fn parameters(prefix: &str, count: usize) -> Arc<Self> {
        Self::new((0..count).map(|i| format!("{prefix}{i}"))).expect("generated names are distinct")
    }

    /// The ring of differential operators: `x_i -> y_i`, `u -> U`, and any
    /// other name gets a `d` prefix.
    pub fn dual(&self) -> Arc<Self> {
        let names = self.names.iter().map(|n| dual_name(n)).collect();
        Arc::new(VariableSet {
            names,
            roles: self.roles.clone(),
        })
    }

    /// True when `self` carries the dual names of `other`, position by position.
    pub fn is_dual_of(&self, other: &VariableSet) -> bool {
        self.names.len() == other.names.len()
            && self.names.iter().zip(&other.names).all(|(a, b)| *a == dual_name(b))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn indices_with_role(&self, role: VarRole) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.roles[i] == role).collect()
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

fn infer_role(name: &str) -> VarRole {
    if name == "u" || name == "v" {
        VarRole::UvBlock
    } else if name.starts_with('x') {
        VarRole::XBlock
    } else {
        VarRole::Plain
    }
}

fn dual_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('x') {
        format!("y{rest}")
    } else if name.chars().all(|c| c.is_ascii_lowercase()) {
        name.to_ascii_uppercase()
    } else {
        format!("d{name}")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roles_are_inferred() {
        let vs = VariableSet::perazzo();
        assert_eq!(vs.indices_with_role(VarRole::XBlock), vec![0, 1, 2]);
        assert_eq!(vs.indices_with_role(VarRole::UvBlock), vec![3, 4]);
    }

    #[test]
    fn dual_names() {
        let d = VariableSet::perazzo().dual();
        assert_eq!(d.names(), ["y0", "y1", "y2", "U", "V"]);
        assert!(d.is_dual_of(&VariableSet::perazzo()));
        assert!(!VariableSet::perazzo().is_dual_of(&VariableSet::perazzo()));
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(VariableSet::new(["u", "u"]).is_err());
        assert!(VariableSet::new(["u", "2v"]).is_err());
        assert!(VariableSet::parse("x0, x1 ,u").is_ok());
    }
}
