//! Turns a parsed document into library objects, checking every reference
//! and every algebra table before any task runs.

use std::collections::BTreeMap;

use norma::algebra::{ExtensionModule, FiniteAlgebra, StructureConstants};
use norma::azumaya::{adjoint_involution, standard_symplectic, AssocAlgebra, Involution};
use norma::norm::RelativeAlgebra;
use norma::scalars::{parse_univariate, Matrix, Scalar, ScalarDomain};
use norma::{Error, Result};

use crate::document::{AlgebraSpec, Document, Element, InvolutionKind, ModuleSpec, Op, Task};

#[derive(Clone, Debug)]
pub enum Built {
    Commutative(FiniteAlgebra),
    Assoc(AssocAlgebra, Option<Involution>),
    Relative(RelativeAlgebra),
}

impl Built {
    fn kind(&self) -> &'static str {
        match self {
            Built::Commutative(_) => "commutative",
            Built::Assoc(..) => "associative",
            Built::Relative(_) => "relative",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    pub domain: ScalarDomain,
    pub algebras: BTreeMap<String, Built>,
    pub modules: BTreeMap<String, ExtensionModule>,
}

fn invalid(msg: String) -> Error {
    Error::Validation(msg)
}

/// `"Q"`, `"Z"`, `"F_p"`, `"Fp"`, `"GF(p)"`, or `"Q[g]/(f)"`.
pub fn parse_domain(text: &str) -> Result<ScalarDomain> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "Q" => return Ok(ScalarDomain::Rationals),
        "Z" => return Ok(ScalarDomain::Integers),
        _ => {}
    }
    let prime = t
        .strip_prefix("F_")
        .or_else(|| t.strip_prefix('F'))
        .or_else(|| t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')));
    if let Some(p) = prime {
        let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad field descriptor {text:?}")))?;
        return ScalarDomain::prime_field(p);
    }
    if let Some(rest) = t.strip_prefix("Q[") {
        let (generator, modulus) = rest
            .split_once("]/(")
            .and_then(|(g, m)| m.strip_suffix(')').map(|m| (g, m)))
            .ok_or_else(|| Error::Parse(format!("bad extension descriptor {text:?}")))?;
        let (var, coeffs) = parse_univariate(modulus)?;
        if var != generator && coeffs.len() > 1 {
            return Err(Error::Parse(format!("modulus is in {var}, generator is {generator}")));
        }
        return ScalarDomain::extension(coeffs, generator);
    }
    Err(Error::Parse(format!("unknown domain {text:?}")))
}

fn parse_scalars(dom: &ScalarDomain, xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|x| dom.parse(x)).collect()
}

fn parse_matrix(dom: &ScalarDomain, rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows.iter().map(|r| parse_scalars(dom, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(dom, rows)
}

pub fn ring_element(ring: &FiniteAlgebra, e: &Element) -> Result<Vec<Scalar>> {
    let dom = ring.domain();
    match e {
        Element::Scalar(s) => Ok(ring.scalar(&dom.parse(s)?)),
        Element::Coordinates(xs) => {
            let v = parse_scalars(dom, xs)?;
            if v.len() != ring.rank() {
                return Err(invalid(format!("element has {} coordinates, algebra has rank {}", v.len(), ring.rank())));
            }
            Ok(v)
        }
    }
}

fn base_scalar(dom: &ScalarDomain, e: &Element) -> Result<Scalar> {
    match e {
        Element::Scalar(s) => dom.parse(s),
        Element::Coordinates(_) => Err(invalid("quaternion parameters over the base are scalars".into())),
    }
}

fn matrix_involution(dom: &ScalarDomain, n: usize, kind: InvolutionKind) -> Result<(AssocAlgebra, Involution)> {
    match kind {
        InvolutionKind::Transpose => adjoint_involution(&Matrix::identity(dom, n)),
        InvolutionKind::Symplectic => {
            if !n.is_multiple_of(2) {
                return Err(invalid(format!("no symplectic involution on M_{n}")));
            }
            adjoint_involution(&standard_symplectic(dom, n / 2))
        }
    }
}

impl Context {
    pub fn build(doc: &Document) -> Result<Self> {
        let domain = parse_domain(&doc.domain)?;
        let mut ctx = Context { domain, algebras: BTreeMap::new(), modules: BTreeMap::new() };
        // base-level algebras first, so that `over` can refer to them
        for pass in 0..2 {
            for (name, spec) in &doc.algebras {
                let relative = matches!(
                    spec,
                    AlgebraSpec::Quaternion { over: Some(_), .. } | AlgebraSpec::Matrix { over: Some(_), .. }
                );
                if relative == (pass == 1) {
                    let built = ctx.build_algebra(spec).map_err(|e| annotate(e, &format!("algebra {name:?}")))?;
                    ctx.algebras.insert(name.clone(), built);
                }
            }
        }
        for (name, spec) in &doc.modules {
            let m = ctx.build_module(spec).map_err(|e| annotate(e, &format!("module {name:?}")))?;
            ctx.modules.insert(name.clone(), m);
        }
        for task in &doc.tasks {
            ctx.check_task(task).map_err(|e| annotate(e, &format!("task {:?}", task.name)))?;
        }
        Ok(ctx)
    }

    pub fn commutative(&self, name: &str) -> Result<&FiniteAlgebra> {
        match self.algebras.get(name) {
            Some(Built::Commutative(a)) => Ok(a),
            Some(other) => Err(invalid(format!("algebra {name:?} is {}, expected commutative", other.kind()))),
            None => Err(invalid(format!("unknown algebra {name:?}"))),
        }
    }

    pub fn algebra(&self, name: &str) -> Result<&Built> {
        self.algebras.get(name).ok_or_else(|| invalid(format!("unknown algebra {name:?}")))
    }

    pub fn module(&self, name: &str) -> Result<&ExtensionModule> {
        self.modules.get(name).ok_or_else(|| invalid(format!("unknown module {name:?}")))
    }

    fn build_algebra(&self, spec: &AlgebraSpec) -> Result<Built> {
        let dom = &self.domain;
        Ok(match spec {
            AlgebraSpec::Split { rank } => Built::Commutative(FiniteAlgebra::split(dom, *rank)?),
            AlgebraSpec::Quadratic { c } => Built::Commutative(FiniteAlgebra::quadratic(dom, dom.parse(c)?)?),
            AlgebraSpec::Polynomial { modulus } => Built::Commutative(FiniteAlgebra::from_polynomial(dom, modulus)?),
            AlgebraSpec::Custom { table, unit, commutative } => {
                let table = table
                    .iter()
                    .map(|row| row.iter().map(|xs| parse_scalars(dom, xs)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let constants = StructureConstants::new(dom, table, parse_scalars(dom, unit)?)?;
                if *commutative {
                    Built::Commutative(FiniteAlgebra::from_constants(constants)?)
                } else {
                    Built::Assoc(AssocAlgebra::generic(constants)?, None)
                }
            }
            AlgebraSpec::Quaternion { a, b, over: None } => {
                let (alg, sigma) = AssocAlgebra::quaternion(dom, base_scalar(dom, a)?, base_scalar(dom, b)?)?;
                Built::Assoc(alg, Some(sigma))
            }
            AlgebraSpec::Quaternion { a, b, over: Some(ring) } => {
                let ring = self.commutative(ring)?;
                Built::Relative(RelativeAlgebra::quaternion(ring, &ring_element(ring, a)?, &ring_element(ring, b)?)?)
            }
            AlgebraSpec::Matrix { n, over: None, involution } => match involution {
                Some(kind) => {
                    let (alg, sigma) = matrix_involution(dom, *n, *kind)?;
                    Built::Assoc(alg, Some(sigma))
                }
                None => Built::Assoc(AssocAlgebra::matrix(dom, *n)?, None),
            },
            AlgebraSpec::Matrix { n, over: Some(ring), involution } => {
                let ring = self.commutative(ring)?;
                let alg = RelativeAlgebra::matrix(ring, *n)?;
                Built::Relative(match involution {
                    Some(kind) => alg.with_relative_involution(matrix_involution(dom, *n, *kind)?.1.matrix())?,
                    None => alg,
                })
            }
        })
    }

    fn build_module(&self, spec: &ModuleSpec) -> Result<ExtensionModule> {
        let ring = self.commutative(&spec.algebra)?;
        match (spec.rank, &spec.blocks, &spec.action) {
            (Some(n), None, None) => {
                if n == 0 {
                    return Err(invalid("free module of rank 0".into()));
                }
                Ok(ExtensionModule::free(ring, n))
            }
            (None, Some(blocks), None) => ExtensionModule::split_product(ring, blocks),
            (None, None, Some(action)) => {
                let mats = action.iter().map(|m| parse_matrix(&self.domain, m)).collect::<Result<Vec<_>>>()?;
                let dim = mats.first().map_or(0, Matrix::rows);
                ExtensionModule::new(ring.clone(), dim, mats)
            }
            _ => Err(invalid("a module needs exactly one of rank, blocks, action".into())),
        }
    }

    fn check_task(&self, task: &Task) -> Result<()> {
        let need = |present: bool, field: &str| {
            if present {
                Ok(())
            } else {
                Err(invalid(format!("{:?} needs {field}", task.op)))
            }
        };
        if let Some(m) = &task.module {
            self.module(m)?;
        }
        if let Some(a) = &task.algebra {
            self.algebra(a)?;
        }
        for a in &task.algebras {
            self.algebra(a)?;
        }
        match task.op {
            Op::Norm | Op::SplitOracle => need(task.module.is_some(), "module"),
            Op::Nu => {
                need(task.module.is_some(), "module")?;
                let element = task.element.as_ref().ok_or_else(|| invalid("nu needs element".into()))?;
                let dim = self.module(task.module.as_ref().unwrap())?.dim();
                if element.len() != dim {
                    return Err(invalid(format!("element has {} coordinates, module has dimension {dim}", element.len())));
                }
                Ok(())
            }
            Op::BaseChange => {
                need(task.module.is_some(), "module")?;
                parse_domain(task.to.as_deref().ok_or_else(|| invalid("base_change needs to".into()))?)?;
                Ok(())
            }
            Op::GammaBasis | Op::GammaRelations => need(task.n.is_some() && task.d.is_some(), "n and d"),
            Op::NormAlgebra | Op::Azumaya | Op::A1d2 | Op::BrauerShadow => need(task.algebra.is_some(), "algebra"),
            Op::Psi => {
                need(task.algebra.is_some() && task.n.is_some(), "algebra and n")?;
                self.commutative(task.algebra.as_ref().unwrap()).map(|_| ())
            }
            Op::SplitNormTriple => need(task.algebras.len() == 2, "two algebras"),
            Op::SplitTriple | Op::SegreRestriction => need(!task.ns.is_empty(), "ns"),
            Op::SegreParity => need(task.perm.is_some() && task.r.is_some() && task.d.is_some(), "perm, r and d"),
            Op::Exceptional => Ok(()),
        }
    }
}

fn annotate(e: Error, at: &str) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{at}: {m}")),
        Error::UnsupportedDomain(m) => Error::UnsupportedDomain(format!("{at}: {m}")),
        Error::Shape(m) => Error::Shape(format!("{at}: {m}")),
        Error::Validation(m) => Error::Validation(format!("{at}: {m}")),
        Error::Precondition(m) => Error::Precondition(format!("{at}: {m}")),
        Error::Internal(m) => Error::Internal(format!("{at}: {m}")),
    }
}
