//! The JSON input document. Field names and shapes are enforced by serde;
//! cross references and algebraic validity are checked in `context`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    /// `"Q"`, `"Z"`, `"F_5"` or `"Q[i]/(i^2+1)"`.
    pub domain: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// `R^rank`.
    Split { rank: usize },
    /// `R[x]/(x^2 - c)`.
    Quadratic { c: String },
    /// `R[x]/(f)` for a monic `f`.
    Polynomial { modulus: String },
    /// Quaternions over the base, or over the commutative algebra `over`.
    Quaternion {
        a: Element,
        b: Element,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        over: Option<String>,
    },
    /// `M_n` over the base, or over the commutative algebra `over`.
    Matrix {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        over: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        involution: Option<InvolutionKind>,
    },
    /// `e_i e_j = sum_k table[i][j][k] e_k`.
    Custom {
        table: Vec<Vec<Vec<String>>>,
        unit: Vec<String>,
        #[serde(default = "yes", skip_serializing_if = "is_true")]
        commutative: bool,
    },
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    Transpose,
    Symplectic,
}

/// A base scalar, embedded as a multiple of 1, or a coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Scalar(String),
    Coordinates(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub algebra: String,
    /// Free of this rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// `E_1 x .. x E_d` over the split algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    /// Matrices of the basis elements of the algebra acting on the module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Norm,
    Nu,
    GammaBasis,
    GammaRelations,
    SplitOracle,
    BaseChange,
    NormAlgebra,
    Azumaya,
    Psi,
    A1d2,
    SplitNormTriple,
    SplitTriple,
    SegreParity,
    SegreRestriction,
    Exceptional,
    BrauerShadow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub name: String,
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ns: Vec<usize>,
    /// Target domain of a base change.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
}

impl Task {
    pub fn new(name: &str, op: Op) -> Self {
        Task {
            name: name.to_string(),
            op,
            module: None,
            algebra: None,
            algebras: Vec::new(),
            element: None,
            n: None,
            d: None,
            r: None,
            perm: None,
            ns: Vec::new(),
            to: None,
        }
    }
}
