use crate::error::{Error, Result};
use crate::model::{GroundSet, Ideal, SimpleFunction, Subset};
use crate::rational::Rational;

/// Nonnegative finitely additive measure on the powerset of a ground set,
/// stored as point masses on atoms. On a finite powerset this encoding is
/// exhaustive: the measure of a set is the sum of its atom masses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Measure {
    ground: GroundSet,
    mass: Vec<Rational>,
}

impl Measure {
    pub fn new(ground: GroundSet, mass: Vec<Rational>) -> Result<Self> {
        if mass.len() != ground.len() {
            return Err(Error::GroundSetMismatch);
        }
        for (i, m) in mass.iter().enumerate() {
            if m.is_negative() {
                return Err(Error::NegativeMass(ground.atom(i).to_string()));
            }
        }
        Ok(Measure { ground, mass })
    }

    /// Builds a measure from `(label, mass)` pairs; omitted atoms get zero.
    pub fn from_masses<I, S>(ground: GroundSet, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: AsRef<str>,
    {
        let mut mass = vec![Rational::zero(); ground.len()];
        for (label, m) in masses {
            let idx = ground
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownLabel(label.as_ref().to_string()))?;
            mass[idx] = m;
        }
        Measure::new(ground, mass)
    }

    pub fn zero(ground: GroundSet) -> Self {
        let mass = vec![Rational::zero(); ground.len()];
        Measure { ground, mass }
    }

    pub fn point_mass(ground: GroundSet, index: usize) -> Self {
        let mut mass = vec![Rational::zero(); ground.len()];
        mass[index] = Rational::one();
        Measure { ground, mass }
    }

    /// Uniform probability on the whole ground set.
    pub fn uniform(ground: GroundSet) -> Self {
        let n = ground.len() as i64;
        let mass = vec![Rational::new(1, n); ground.len()];
        Measure { ground, mass }
    }

    /// Uniform probability on a nonempty subset.
    pub fn uniform_on(ground: GroundSet, support: Subset) -> Result<Self> {
        ground.check(support)?;
        if support.is_empty() {
            return Err(Error::ZeroConditioningSet);
        }
        let share = Rational::new(1, support.cardinality() as i64);
        let mut mass = vec![Rational::zero(); ground.len()];
        for i in support.iter() {
            mass[i] = share.clone();
        }
        Ok(Measure { ground, mass })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn mass(&self, index: usize) -> &Rational {
        &self.mass[index]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    pub fn total(&self) -> Rational {
        self.mass.iter().sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total() == Rational::one()
    }

    /// Measure of a set: sum of the masses of its atoms.
    pub fn of_subset(&self, s: Subset) -> Rational {
        s.iter().map(|i| self.mass[i].clone()).sum()
    }

    /// Integral of a function: `Σ_ω mass(ω)·f(ω)`.
    pub fn of_function(&self, f: &SimpleFunction) -> Result<Rational> {
        if self.ground != *f.ground() {
            return Err(Error::GroundSetMismatch);
        }
        Ok(self
            .mass
            .iter()
            .zip(f.values())
            .map(|(m, v)| m * v)
            .sum())
    }

    /// Atoms with strictly positive mass.
    pub fn support(&self) -> Subset {
        Subset::from_indices(
            (0..self.mass.len()).filter(|&i| self.mass[i].is_positive()),
        )
    }

    /// Conditional measure given `A`: `m_A(B) = m(A ∩ B) / m(A)`. The result
    /// is a probability supported inside `A`.
    pub fn restrict(&self, a: Subset) -> Result<Measure> {
        self.ground.check(a)?;
        let ma = self.of_subset(a);
        if !ma.is_positive() {
            return Err(Error::ZeroConditioningSet);
        }
        let mass = (0..self.mass.len())
            .map(|i| {
                if a.contains(i) {
                    &self.mass[i] / &ma
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Ok(Measure {
            ground: self.ground.clone(),
            mass,
        })
    }

    /// The ideal of null sets: everything inside the zero-mass atoms.
    pub fn null_ideal(&self) -> Ideal {
        let zero = self.ground.complement(self.support());
        Ideal::principal(self.ground.clone(), zero).expect("complement is in range")
    }

    pub fn scale(&self, c: &Rational) -> Result<Measure> {
        if c.is_negative() {
            return Err(Error::NegativeMass("scale".into()));
        }
        let mass = self.mass.iter().map(|m| m * c).collect();
        Ok(Measure {
            ground: self.ground.clone(),
            mass,
        })
    }

    /// Exact convex/conic combination `Σ wᵢ mᵢ` of measures on one ground set.
    pub fn mix(parts: &[(Rational, &Measure)]) -> Result<Measure> {
        let (_, first) = parts.first().ok_or(Error::EmptyMeasureFamily)?;
        let ground = first.ground.clone();
        let mut mass = vec![Rational::zero(); ground.len()];
        for (w, m) in parts {
            if m.ground != ground {
                return Err(Error::GroundSetMismatch);
            }
            if w.is_negative() {
                return Err(Error::NegativeMass("mixture weight".into()));
            }
            for (acc, x) in mass.iter_mut().zip(&m.mass) {
                *acc += w * x;
            }
        }
        Ok(Measure { ground, mass })
    }
}
