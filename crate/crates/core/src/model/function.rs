use crate::error::{Error, Result};
use crate::model::{GroundSet, Subset};
use crate::rational::Rational;

/// Rational-valued function on the atoms of a ground set. On a finite ground
/// set these span every real function, so this type also plays the role of
/// the averaged indicator functions produced by sequences of sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleFunction {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl SimpleFunction {
    pub fn new(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != ground.len() {
            return Err(Error::GroundSetMismatch);
        }
        Ok(SimpleFunction { ground, values })
    }

    pub fn constant(ground: GroundSet, c: Rational) -> Self {
        let values = vec![c; ground.len()];
        SimpleFunction { ground, values }
    }

    pub fn zero(ground: GroundSet) -> Self {
        Self::constant(ground, Rational::zero())
    }

    pub fn indicator(ground: GroundSet, s: Subset) -> Result<Self> {
        ground.check(s)?;
        let values = (0..ground.len())
            .map(|i| {
                if s.contains(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Ok(SimpleFunction { ground, values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn value(&self, index: usize) -> &Rational {
        &self.values[index]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn add(&self, other: &SimpleFunction) -> Result<SimpleFunction> {
        if self.ground != other.ground {
            return Err(Error::GroundSetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SimpleFunction {
            ground: self.ground.clone(),
            values,
        })
    }

    pub fn add_constant(&self, c: &Rational) -> SimpleFunction {
        let values = self.values.iter().map(|v| v + c).collect();
        SimpleFunction {
            ground: self.ground.clone(),
            values,
        }
    }

    pub fn scale(&self, c: &Rational) -> SimpleFunction {
        let values = self.values.iter().map(|v| v * c).collect();
        SimpleFunction {
            ground: self.ground.clone(),
            values,
        }
    }

    /// Pointwise product, used for positive multipliers in ranking axioms.
    pub fn mul_pointwise(&self, other: &SimpleFunction) -> Result<SimpleFunction> {
        if self.ground != other.ground {
            return Err(Error::GroundSetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(SimpleFunction {
            ground: self.ground.clone(),
            values,
        })
    }

    /// Pointwise minimum with the constant `a` (truncation `f ∧ a`).
    pub fn min_with_constant(&self, a: &Rational) -> SimpleFunction {
        let values = self
            .values
            .iter()
            .map(|v| v.clone().min(a.clone()))
            .collect();
        SimpleFunction {
            ground: self.ground.clone(),
            values,
        }
    }

    /// Maximum of the function over the whole ground set.
    pub fn sup(&self) -> Rational {
        self.sup_over(self.ground.full())
            .expect("ground set is nonempty")
    }

    /// Maximum over a subset; `None` when the subset is empty.
    pub fn sup_over(&self, s: Subset) -> Option<Rational> {
        s.iter().map(|i| self.values[i].clone()).reduce(Rational::max)
    }

    /// The set `{ω : f(ω) < g(ω)}`.
    pub fn strictly_below(&self, other: &SimpleFunction) -> Result<Subset> {
        if self.ground != other.ground {
            return Err(Error::GroundSetMismatch);
        }
        Ok(Subset::from_indices(
            (0..self.values.len()).filter(|&i| self.values[i] < other.values[i]),
        ))
    }

    /// The set `{ω : f(ω) < c}`.
    pub fn strictly_below_constant(&self, c: &Rational) -> Subset {
        Subset::from_indices((0..self.values.len()).filter(|&i| &self.values[i] < c))
    }
}
