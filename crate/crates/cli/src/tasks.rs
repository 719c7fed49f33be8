use norma::algebra::FiniteAlgebra;
use norma::azumaya::{a1d2_norm, brauer_shadow_split, compare_with_tensor_pair, split_triple_z, tensor_quadratic_pair, TripleReport};
use norma::gamma::{check_gamma_relations, GammaSpace};
use norma::norm::{base_change, check_base_change_square, check_split_oracle, psi_endo_iso, NormAlgebra, NormModule};
use norma::scalars::{parse_permutation, Matrix, Scalar, ScalarMap};
use norma::segre::{check_segre_restriction, exceptional_iso_evidence, perm_matrix};
use norma::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::context::{parse_domain, Built, Context};
use crate::document::{Op, Task};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TaskOutcome {
    pub status: Status,
    pub json: Value,
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| scalars(m.row(r))).collect())
}

fn words(space: &GammaSpace, indices: impl Iterator<Item = usize>) -> Value {
    Value::Array(indices.map(|i| json!(space.word(i))).collect())
}

fn triple_report(r: &TripleReport) -> Value {
    json!({
        "rank": r.rank,
        "degree": r.degree,
        "dim_sym": r.dim_sym,
        "involution": r.involution.to_string(),
        "f_one": r.f_one.to_string(),
    })
}

pub fn run_task(ctx: &Context, task: &Task, seed: u64, samples: usize) -> TaskOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (status, body) = match execute(ctx, task, samples, &mut rng) {
        Ok(result) => (Status::Pass, json!({ "result": result })),
        Err(Error::Validation(m)) => (Status::Fail, json!({ "message": m })),
        Err(e) => (Status::Error, json!({ "message": e.to_string() })),
    };
    let mut json = json!({ "name": task.name, "op": task.op, "status": status.as_str() });
    json.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
    TaskOutcome { status, json }
}

fn execute(ctx: &Context, task: &Task, samples: usize, rng: &mut ChaCha8Rng) -> Result<Value> {
    let dom = &ctx.domain;
    let module = || ctx.module(task.module.as_deref().unwrap_or_default());
    let algebra = || ctx.algebra(task.algebra.as_deref().unwrap_or_default());
    Ok(match task.op {
        Op::Norm => {
            let nm = NormModule::build(module()?)?;
            json!({
                "dimension": nm.dim(),
                "ambient_dimension": nm.ambient().dim(),
                "relation_rank": nm.relation_rank(),
                "etale": nm.is_etale(),
                "representatives": words(nm.ambient(), nm.representatives().iter().copied()),
            })
        }
        Op::Nu => {
            let nm = NormModule::build(module()?)?;
            let m = task.element.as_ref().unwrap().iter().map(|x| dom.parse(x)).collect::<Result<Vec<_>>>()?;
            json!({ "dimension": nm.dim(), "nu": scalars(&nm.nu(&m)?) })
        }
        Op::GammaBasis => {
            let space = GammaSpace::new(dom, task.n.unwrap(), task.d.unwrap());
            json!({ "dimension": space.dim(), "basis": words(&space, 0..space.dim()) })
        }
        Op::GammaRelations => {
            let report = check_gamma_relations(dom, task.n.unwrap(), task.d.unwrap(), samples, rng)?;
            let relations: Vec<Value> = report.relations_checked.iter().map(|(name, count)| json!({ "relation": name, "checks": count })).collect();
            json!({ "dimension": report.dimension, "samples": report.samples, "relations": relations })
        }
        Op::SplitOracle => {
            let nm = NormModule::build(module()?)?;
            let tuples = check_split_oracle(&nm, samples, rng)?;
            json!({ "dimension": nm.dim(), "basis_tuples": tuples, "samples": samples })
        }
        Op::BaseChange => {
            let nm = NormModule::build(module()?)?;
            let target = parse_domain(task.to.as_deref().unwrap())?;
            let f = ScalarMap::canonical(dom, &target)?;
            let ambient = check_base_change_square(&nm, &f, samples, rng)?;
            let (nq, theta) = base_change(&nm, &f)?;
            json!({ "dimension": nm.dim(), "base_changed_dimension": nq.dim(), "ambient_dimension": ambient, "theta": matrix(&theta) })
        }
        Op::NormAlgebra => {
            let Built::Relative(source) = algebra()? else {
                return Err(Error::Precondition("norm_algebra needs an algebra over an extension".into()));
            };
            let na = NormAlgebra::build(source)?;
            if na.nu(&source.one())? != na.one() {
                return Err(Error::Validation("nu(1) is not the unit".into()));
            }
            for _ in 0..samples {
                let x = source.random_element(rng);
                let y = source.random_element(rng);
                if na.nu(&source.mul(&x, &y))? != na.mul(&na.nu(&x)?, &na.nu(&y)?) {
                    return Err(Error::Validation("nu is not multiplicative".into()));
                }
            }
            json!({ "dimension": na.dim(), "unit": scalars(&na.one()), "samples": samples })
        }
        Op::Azumaya => {
            let assoc = match algebra()? {
                Built::Assoc(a, _) => a.clone(),
                Built::Relative(r) => NormAlgebra::build(r)?.to_assoc()?,
                Built::Commutative(_) => return Err(Error::Precondition("Azumaya test of a commutative algebra".into())),
            };
            let rank = assoc.enveloping_map().rank()?;
            let n = assoc.rank();
            if rank != n * n {
                return Err(Error::Validation(format!("enveloping map has rank {rank}, expected {}", n * n)));
            }
            json!({ "rank": n, "enveloping_rank": rank, "azumaya": true })
        }
        Op::Psi => {
            let ring: &FiniteAlgebra = ctx.commutative(task.algebra.as_deref().unwrap())?;
            let r = psi_endo_iso(ring, task.n.unwrap())?.verify(samples, rng)?;
            json!({ "source_dimension": r.source_dim, "target_dimension": r.target_dim, "rank": r.rank, "samples": r.multiplicative_samples })
        }
        Op::A1d2 => {
            let Built::Relative(source) = algebra()? else {
                return Err(Error::Precondition("a1d2 needs a quaternion algebra over a quadratic extension".into()));
            };
            triple_report(&a1d2_norm(source)?.triple.report()?)
        }
        Op::SplitNormTriple => {
            let mut parts = Vec::new();
            for name in &task.algebras {
                match ctx.algebra(name)? {
                    Built::Assoc(a, Some(s)) => parts.push((a.clone(), s.clone())),
                    _ => return Err(Error::Precondition(format!("{name:?} needs to be a base algebra with involution"))),
                }
            }
            let ring = FiniteAlgebra::split(dom, 2)?;
            let algebras = [parts[0].0.clone(), parts[1].0.clone()];
            let involutions = [parts[0].1.clone(), parts[1].1.clone()];
            let source = norma::norm::RelativeAlgebra::split_product(&ring, &algebras, Some(&involutions))?;
            let norm = a1d2_norm(&source)?;
            let tensor = tensor_quadratic_pair(&parts[0].0, &parts[0].1, &parts[1].0, &parts[1].1)?;
            compare_with_tensor_pair(&norm, &tensor)?;
            json!({ "norm_triple": triple_report(&norm.triple.report()?), "tensor_pair": triple_report(&tensor.report()?), "equal": true })
        }
        Op::SplitTriple => {
            let t = split_triple_z(&task.ns)?;
            t.check_integrality()?;
            t.check_even_form(samples, rng)?;
            t.check_sigma_is_tensor(&norma::scalars::ScalarDomain::Rationals)?;
            let sym = t.sym_basis_z()?;
            let f: Vec<Value> = sym.iter().map(|s| t.f_q(s).map(|v| json!(v.to_string()))).collect::<Result<_>>()?;
            let reduced = t.reduce_mod(2)?.report()?;
            json!({
                "size": t.size(),
                "gram": matrix(t.gram()),
                "gram_det": t.gram().det()?.to_string(),
                "dim_sym": sym.len(),
                "f_on_sym_basis": f,
                "mod_2": triple_report(&reduced),
            })
        }
        Op::SegreParity => {
            let d = task.d.unwrap();
            let perm = parse_permutation(task.perm.as_deref().unwrap(), d)?;
            let j = perm_matrix(dom, &perm, task.r.unwrap())?;
            json!({ "size": j.rows(), "det": j.det()?.to_string() })
        }
        Op::SegreRestriction => {
            let report = check_segre_restriction(&task.ns, dom, samples, rng)?;
            json!({ "samples": report.samples, "sign_tuples": report.sign_tuples })
        }
        Op::Exceptional => {
            let r = exceptional_iso_evidence(dom)?;
            json!({
                "sp2_order": r.sp2_order,
                "quotient_order": r.quotient_order,
                "image_size": r.image_size,
                "transposition_dickson": r.transposition_dickson,
            })
        }
        Op::BrauerShadow => {
            let Built::Assoc(a, Some(sigma)) = algebra()? else {
                return Err(Error::Precondition("the Brauer shadow needs a base quaternion algebra with involution".into()));
            };
            let shadow = brauer_shadow_split(a, sigma)?;
            let rank = shadow.verify(samples, rng)?;
            json!({ "dimension": shadow.norm.dim(), "rank": rank, "samples": samples })
        }
    })
}
