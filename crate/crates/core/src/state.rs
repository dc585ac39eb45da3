//! State vectors `c^W` of monomial subspaces and their distance to the
//! barycenter `xi_{d,b} = (db/(r+1)) (1, ..., 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::monomial::MonomialSubspace;

/// `c^W` with the `(d, b)` it lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVector {
    coords: Vec<i64>,
    d: u32,
    b: u64,
}

impl StateVector {
    pub fn new(coords: Vec<i64>, d: u32, b: u64) -> Self {
        StateVector { coords, d, b }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn r(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn norm_sq(&self) -> BigInt {
        self.coords.iter().map(|&c| BigInt::from(c) * c).sum()
    }

    /// `|c|^2 - d^2 b^2 / (r+1)`.
    pub fn dist0_sq(&self) -> BigRational {
        let db = BigInt::from(self.d) * self.b;
        let center = BigRational::new(&db * &db, BigInt::from(self.coords.len()));
        BigRational::from(self.norm_sq()) - center
    }

    pub fn pair(&self, lambda: &OnePS) -> BigInt {
        lambda.pair(&self.coords)
    }
}

/// Integer weights of a diagonal one-parameter subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OnePS {
    weights: Vec<i64>,
}

impl OnePS {
    pub fn new(weights: Vec<i64>) -> Self {
        OnePS { weights }
    }

    /// `(r, -1, ..., -1)`.
    pub fn standard(r: usize) -> Self {
        let mut weights = vec![-1; r + 1];
        weights[0] = r as i64;
        OnePS { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn neg(&self) -> OnePS {
        OnePS { weights: self.weights.iter().map(|w| -w).collect() }
    }

    pub fn scale(&self, k: i64) -> OnePS {
        OnePS { weights: self.weights.iter().map(|w| w * k).collect() }
    }

    pub fn is_special(&self) -> bool {
        self.weights.iter().sum::<i64>() == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.weights.iter().fold(0i64, |g, w| g.gcd(w)) == 1
    }

    pub fn pair(&self, coords: &[i64]) -> BigInt {
        self.weights
            .iter()
            .zip(coords)
            .map(|(w, c)| BigInt::from(*w) * c)
            .sum()
    }

    pub fn parse(text: &str) -> crate::error::Result<OnePS> {
        let weights = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| crate::error::Error::Parse(format!("bad weight '{s}'")))
            })
            .collect::<crate::error::Result<Vec<_>>>()?;
        if weights.is_empty() {
            return Err(crate::error::Error::Parse("empty weight vector".into()));
        }
        Ok(OnePS { weights })
    }
}

pub fn state_vector(w: &MonomialSubspace) -> StateVector {
    let mut coords = vec![0i64; w.r() + 1];
    for m in w.iter() {
        for (c, e) in coords.iter_mut().zip(m.exps()) {
            *c += *e as i64;
        }
    }
    StateVector::new(coords, w.d(), w.len() as u64)
}

pub fn complement(w: &MonomialSubspace) -> MonomialSubspace {
    w.complement()
}

/// Primitive integer direction of `c^W - xi_{d,b}`, or `None` when `W` sits at the barycenter.
pub fn adapted_one_ps(w: &MonomialSubspace) -> Option<OnePS> {
    adapted_from_state(&state_vector(w))
}

pub fn adapted_from_state(c: &StateVector) -> Option<OnePS> {
    let n = c.coords.len() as i64;
    let db = c.d as i64 * c.b as i64;
    let raw: Vec<i64> = c.coords.iter().map(|&x| n * x - db).collect();
    let g = raw.iter().fold(0i64, |g, w| g.gcd(w));
    if g.is_zero() {
        return None;
    }
    let g = g.abs();
    Some(OnePS { weights: raw.into_iter().map(|x| x / g).collect() })
}

/// `(d/(r+1)) C(r+d, r)`, the common coordinate of `c^W + c^{W*}`.
pub fn dual_sum_coordinate(r: usize, d: u32) -> BigRational {
    let total = BigInt::from(d) * BigInt::from(crate::monomial::count_monomials(r, d));
    BigRational::new(total, BigInt::from(r + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{lex_cosegment, lex_segment, Monomial};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn worked_plane_example() {
        let l = lex_segment(2, 3, 3).unwrap();
        let c = state_vector(&l);
        assert_eq!(c.coords(), &[7, 1, 1]);
        assert_eq!(c.norm_sq(), big(51));
        assert_eq!(c.dist0_sq(), BigRational::from(big(24)));
        assert_eq!(adapted_one_ps(&l), Some(OnePS::new(vec![2, -1, -1])));

        let a = lex_cosegment(2, 3, 3).unwrap();
        let c = state_vector(&a);
        assert_eq!(c.coords(), &[3, 9, 9]);
        assert_eq!(c.dist0_sq(), BigRational::from(big(24)));
        assert_eq!(adapted_one_ps(&a), Some(OnePS::new(vec![-2, 1, 1])));
        assert_eq!(complement(&l), a);
    }

    #[test]
    fn single_monomial_and_full_space() {
        let w = MonomialSubspace::new(2, 4, vec![Monomial::power(2, 2, 4)]).unwrap();
        assert_eq!(state_vector(&w).coords(), &[0, 0, 4]);
        let full = MonomialSubspace::full(2, 4);
        assert_eq!(adapted_one_ps(&full), None);
        assert!(state_vector(&full).dist0_sq().is_zero());
        assert_eq!(
            BigRational::from(big(state_vector(&full).coords()[0])),
            dual_sum_coordinate(2, 4)
        );
    }

    #[test]
    fn one_ps_helpers() {
        let l = OnePS::standard(3);
        assert_eq!(l.weights(), &[3, -1, -1, -1]);
        assert!(l.is_special() && l.is_primitive());
        assert!(!l.scale(2).is_primitive());
        assert_eq!(l.neg().pair(&[1, 2, 3, 4]), big(-3 + 9));
        assert_eq!(OnePS::parse("2,-1, -1").unwrap(), OnePS::new(vec![2, -1, -1]));
        assert!(OnePS::parse("2,x").is_err());
    }
}
