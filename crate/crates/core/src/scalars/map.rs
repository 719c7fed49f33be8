use super::{Scalar, ScalarDomain};
use crate::error::{bail, ensure, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Identity,
    /// Z -> Q, Z -> F_p, Q -> Q(x): the unique map from the prime ring.
    Canonical,
    /// Q(x) -> Q(y), x sent to the stored element of the target.
    Generator(Scalar),
}

/// A unital ring homomorphism between two scalar domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMap {
    source: ScalarDomain,
    target: ScalarDomain,
    kind: Kind,
}

impl ScalarMap {
    pub fn identity(domain: &ScalarDomain) -> Self {
        ScalarMap { source: domain.clone(), target: domain.clone(), kind: Kind::Identity }
    }

    /// The structure map out of the prime ring: `Z -> anything`,
    /// `Q -> Q(x)`, `F_p -> F_p`. Mixed characteristics are rejected.
    pub fn canonical(source: &ScalarDomain, target: &ScalarDomain) -> Result<Self> {
        if source == target {
            return Ok(Self::identity(source));
        }
        match (source, target) {
            (ScalarDomain::Integers, _) => {}
            (ScalarDomain::Rationals, ScalarDomain::Extension(_)) => {}
            _ => bail!(UnsupportedDomain, "no canonical ring map {source} -> {target}"),
        }
        Ok(ScalarMap { source: source.clone(), target: target.clone(), kind: Kind::Canonical })
    }

    /// The embedding `Q[x]/(f) -> target` sending `x` to `image`; checks
    /// `f(image) = 0`.
    pub fn from_generator(source: &ScalarDomain, target: &ScalarDomain, image: Scalar) -> Result<Self> {
        let ScalarDomain::Extension(field) = source else {
            bail!(UnsupportedDomain, "{source} is not a simple extension");
        };
        ensure!(target.contains(&image), Shape, "generator image {image} not in {target}");
        ensure!(
            matches!(target, ScalarDomain::Extension(_)),
            UnsupportedDomain,
            "{source} only embeds into characteristic-zero extensions"
        );
        let mut acc = target.zero();
        for c in field.modulus().iter().rev() {
            acc = &(&acc * &image) + &target.from_rational(c)?;
        }
        ensure!(acc.is_zero(), Validation, "{image} is not a root of the modulus of {source}");
        Ok(ScalarMap { source: source.clone(), target: target.clone(), kind: Kind::Generator(image) })
    }

    pub fn source(&self) -> &ScalarDomain {
        &self.source
    }

    pub fn target(&self) -> &ScalarDomain {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Identity
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar> {
        ensure!(self.source.contains(x), Shape, "{x} is not in {}", self.source);
        match &self.kind {
            Kind::Identity => Ok(x.clone()),
            Kind::Canonical => match x {
                Scalar::Integer(n) => Ok(self.target.from_bigint(n)),
                Scalar::Rational(q) => self.target.from_rational(q),
                _ => unreachable!("canonical maps start at Z or Q"),
            },
            Kind::Generator(image) => {
                let Scalar::Algebraic(a) = x else { unreachable!() };
                let mut acc = self.target.zero();
                for c in a.coeffs().iter().rev() {
                    acc = &(&acc * image) + &self.target.from_rational(c)?;
                }
                Ok(acc)
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ScalarMap) -> Result<ScalarMap> {
        ensure!(self.target == other.source, Shape, "cannot compose {} -> {} with {} -> {}", self.source, self.target, other.source, other.target);
        if self.is_identity() {
            return Ok(other.clone());
        }
        if other.is_identity() {
            return Ok(self.clone());
        }
        match &self.kind {
            Kind::Canonical => ScalarMap::canonical(&self.source, &other.target),
            Kind::Generator(image) => ScalarMap::from_generator(&self.source, &other.target, other.apply(image)?),
            Kind::Identity => unreachable!(),
        }
    }
}

pub(crate) fn int_coeffs(coeffs: &[i64]) -> Vec<num_rational::BigRational> {
    use num_rational::BigRational;
    use num_traits::Zero;
    coeffs.iter().map(|&c| if c == 0 { BigRational::zero() } else { BigRational::from_integer(c.into()) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_gaussian_into_eighth_roots() {
        let qi = ScalarDomain::quadratic(-1, "i").unwrap();
        // x^4 + 1
        let z8 = ScalarDomain::extension(int_coeffs(&[1, 0, 0, 0, 1]), "z").unwrap();
        let z = z8.generator().unwrap();
        let f = ScalarMap::from_generator(&qi, &z8, &z * &z).unwrap();
        let i = qi.generator().unwrap();
        assert_eq!(f.apply(&(&i * &i)).unwrap(), z8.from_int(-1));
        assert!(ScalarMap::from_generator(&qi, &z8, z.clone()).is_err());
    }

    #[test]
    fn composition_matches_pointwise() {
        let qi = ScalarDomain::quadratic(-1, "i").unwrap();
        let z8 = ScalarDomain::extension(int_coeffs(&[1, 0, 0, 0, 1]), "z").unwrap();
        let z = z8.generator().unwrap();
        let a = ScalarMap::canonical(&ScalarDomain::Rationals, &qi).unwrap();
        let b = ScalarMap::from_generator(&qi, &z8, &z * &z).unwrap();
        let ab = a.then(&b).unwrap();
        let x = ScalarDomain::Rationals.parse("-5/3").unwrap();
        assert_eq!(ab.apply(&x).unwrap(), b.apply(&a.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn mixed_characteristic_is_rejected() {
        let f5 = ScalarDomain::prime_field(5).unwrap();
        assert!(ScalarMap::canonical(&ScalarDomain::Rationals, &f5).is_err());
        assert!(ScalarMap::canonical(&ScalarDomain::Integers, &f5).is_ok());
    }
}
