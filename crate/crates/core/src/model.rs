use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::ln_biguint;
use crate::error::{Error, Result};

/// A base triple `(a, b, c)` for `a^x + b^y = c^z`.
///
/// Construction enforces `min{a, b, c} > 1` and pairwise coprimality, so a
/// value of this type is always a valid instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

impl Instance {
    pub fn new(a: BigUint, b: BigUint, c: BigUint) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if *v <= BigUint::one() {
                return Err(Error::InvalidInstance(format!(
                    "base {name} = {v} must be greater than 1"
                )));
            }
        }
        for (n1, v1, n2, v2) in [("a", &a, "b", &b), ("b", &b, "c", &c), ("a", &a, "c", &c)] {
            let g = v1.gcd(v2);
            if !g.is_one() {
                return Err(Error::InvalidInstance(format!(
                    "gcd({n1}, {n2}) = gcd({v1}, {v2}) = {g}; bases must be pairwise coprime"
                )));
            }
        }
        Ok(Instance { a, b, c })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn max_base(&self) -> &BigUint {
        (&self.a).max(&self.b).max(&self.c)
    }

    /// The triple as machine words, when every base fits.
    pub fn to_u64_triple(&self) -> Option<(u64, u64, u64)> {
        Some((self.a.to_u64()?, self.b.to_u64()?, self.c.to_u64()?))
    }

    /// `(ln a, ln b, ln c)` in double precision; only used for loop bounds
    /// and guesses that are confirmed exactly afterwards.
    pub fn ln_f64(&self) -> (f64, f64, f64) {
        (ln_biguint(&self.a), ln_biguint(&self.b), ln_biguint(&self.c))
    }

    /// Same equation with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Instance {
        Instance {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Instance", 3)?;
        st.serialize_field("a", &Decimal(&self.a))?;
        st.serialize_field("b", &Decimal(&self.b))?;
        st.serialize_field("c", &Decimal(&self.c))?;
        st.end()
    }
}

/// Serializes a big integer as a JSON number when it fits in 63 bits and as
/// a decimal string otherwise.
pub struct Decimal<'a>(pub &'a BigUint);

impl Serialize for Decimal<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A positive exponent triple `(x, y, z)`.
///
/// Ordered by `(z, x, y)`, which is the order solution sets are reported in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct Solution {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Solution {
    pub const fn new(x: u64, y: u64, z: u64) -> Self {
        Solution { x, y, z }
    }

    pub fn max_exponent(&self) -> u64 {
        self.x.max(self.y).max(self.z)
    }

    pub fn min_exponent(&self) -> u64 {
        self.x.min(self.y).min(self.z)
    }

    /// Exact check of `a^x + b^y = c^z`.
    pub fn satisfies(&self, inst: &Instance) -> bool {
        if self.min_exponent() == 0 {
            return false;
        }
        let lhs = pow(inst.a(), self.x) + pow(inst.b(), self.y);
        lhs == pow(inst.c(), self.z)
    }
}

pub(crate) fn pow(base: &BigUint, exp: u64) -> BigUint {
    num_traits::Pow::pow(base, exp)
}

impl Ord for Solution {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.z, self.x, self.y).cmp(&(other.z, other.x, other.y))
    }
}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<[u64; 3]> for Solution {
    fn from([x, y, z]: [u64; 3]) -> Self {
        Solution { x, y, z }
    }
}

impl From<Solution> for [u64; 3] {
    fn from(s: Solution) -> Self {
        [s.x, s.y, s.z]
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_non_coprime_bases() {
        assert!(matches!(
            Instance::from_u64(1, 3, 5),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            Instance::from_u64(4, 6, 5),
            Err(Error::InvalidInstance(_))
        ));
        // setwise coprime but not pairwise
        assert!(Instance::from_u64(6, 10, 15).is_err());
        assert!(Instance::from_u64(3, 5, 2).is_ok());
    }

    #[test]
    fn showcase_solutions_satisfy_equation() {
        let inst = Instance::from_u64(3, 5, 2).unwrap();
        for s in [Solution::new(1, 1, 3), Solution::new(3, 1, 5), Solution::new(1, 3, 7)] {
            assert!(s.satisfies(&inst), "{s}");
        }
        assert!(!Solution::new(1, 1, 4).satisfies(&inst));
    }

    #[test]
    fn solutions_order_by_z_then_x() {
        let mut v = vec![Solution::new(1, 3, 7), Solution::new(3, 1, 5), Solution::new(1, 1, 3)];
        v.sort();
        assert_eq!(v, vec![Solution::new(1, 1, 3), Solution::new(3, 1, 5), Solution::new(1, 3, 7)]);
    }

    #[test]
    fn solution_serializes_as_array() {
        let s = Solution::new(4, 2, 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[4,2,2]");
        let back: Solution = serde_json::from_str("[4,2,2]").unwrap();
        assert_eq!(back, s);
    }
}
