//! The counting argument behind the solution bound, made executable.
//!
//! An instance is rewritten as `A^X + λ B^Y = C^Z` with `C` the largest base.
//! From the solution with least `Z` one gets the order data
//! `A^n1 = C^Z1 f + delta1`, and every congruence and gcd relation the
//! argument derives from it can be recomputed with exact integers and
//! reported as a certificate.

mod certificate;
mod order;
mod pillai;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{pow, Decimal, Instance, Solution};

pub use certificate::{
    certify_instance, certify_solutions, verify_gcd_chain, verify_minimal_level_count, verify_pair_congruence,
    verify_triple_chain, CertificateKind, Clause, InstanceCertificates, LemmaCertificate, Verdict,
};
pub use order::{
    check_order_divisibility, least_pm_order, order_data, DivisibilityCheck, OrderData,
    OrderWitness,
};
pub use pillai::{pillai_census, pillai_count, PillaiSolutions};

/// Which rearrangement of `a^x + b^y = c^z` a canonical form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Perm {
    /// `(A, B, C, λ) = (a, b, c, +1)`, `(X, Y, Z) = (x, y, z)`.
    Abc,
    /// `(A, B, C, λ) = (c, a, b, -1)`, `(X, Y, Z) = (z, x, y)`.
    Cab,
    /// `(A, B, C, λ) = (c, b, a, -1)`, `(X, Y, Z) = (z, y, x)`.
    Cba,
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Perm::Abc => "abc",
            Perm::Cab => "cab",
            Perm::Cba => "cba",
        })
    }
}

/// `A^X + λ B^Y = C^Z` with `C = max{a, b, c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    a: BigUint,
    b: BigUint,
    c: BigUint,
    lambda: i8,
    perm: Perm,
}

impl CanonicalForm {
    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    /// `+1` or `-1`.
    pub fn lambda(&self) -> i8 {
        self.lambda
    }

    pub fn perm(&self) -> Perm {
        self.perm
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.lambda > 0 { '+' } else { '-' };
        write!(f, "{}^X {op} {}^Y = {}^Z", self.a, self.b, self.c)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CanonicalForm", 5)?;
        st.serialize_field("A", &Decimal(&self.a))?;
        st.serialize_field("B", &Decimal(&self.b))?;
        st.serialize_field("C", &Decimal(&self.c))?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("perm", &self.perm)?;
        st.end()
    }
}

/// Exponents `(X, Y, Z)` of the canonical equation. Not checked on
/// construction; see [`CanonicalSolution::satisfies`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct CanonicalSolution {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl From<[u64; 3]> for CanonicalSolution {
    fn from([x, y, z]: [u64; 3]) -> Self {
        CanonicalSolution { x, y, z }
    }
}

impl From<CanonicalSolution> for [u64; 3] {
    fn from(s: CanonicalSolution) -> Self {
        [s.x, s.y, s.z]
    }
}

impl CanonicalSolution {
    pub const fn new(x: u64, y: u64, z: u64) -> Self {
        CanonicalSolution { x, y, z }
    }

    /// Exact check of `A^X + λ B^Y = C^Z` with positive exponents.
    pub fn satisfies(&self, form: &CanonicalForm) -> bool {
        if self.x == 0 || self.y == 0 || self.z == 0 {
            return false;
        }
        let lhs = BigInt::from(pow(&form.a, self.x)) + BigInt::from(form.lambda) * BigInt::from(pow(&form.b, self.y));
        lhs == BigInt::from(pow(&form.c, self.z))
    }
}

/// The unique rearrangement whose right-hand base is `max{a, b, c}`.
pub fn canonicalize(inst: &Instance) -> CanonicalForm {
    let (a, b, c) = (inst.a().clone(), inst.b().clone(), inst.c().clone());
    if c > a && c > b {
        CanonicalForm {
            a,
            b,
            c,
            lambda: 1,
            perm: Perm::Abc,
        }
    } else if b > a {
        // c^z - a^x = b^y
        CanonicalForm {
            a: c,
            b: a,
            c: b,
            lambda: -1,
            perm: Perm::Cab,
        }
    } else {
        // c^z - b^y = a^x
        CanonicalForm {
            a: c,
            b,
            c: a,
            lambda: -1,
            perm: Perm::Cba,
        }
    }
}

/// Maps a solution of the instance to the canonical equation and checks it.
pub fn to_canonical_solution(form: &CanonicalForm, sol: &Solution) -> Result<CanonicalSolution> {
    let (x, y, z) = (sol.x, sol.y, sol.z);
    let s = match form.perm {
        Perm::Abc => CanonicalSolution::new(x, y, z),
        Perm::Cab => CanonicalSolution::new(z, x, y),
        Perm::Cba => CanonicalSolution::new(z, y, x),
    };
    if !s.satisfies(form) {
        return Err(Error::Internal(format!(
            "{sol:?} maps to {s:?}, which does not solve {form}"
        )));
    }
    Ok(s)
}

/// Inverse of [`to_canonical_solution`].
pub fn from_canonical_solution(form: &CanonicalForm, s: &CanonicalSolution) -> Solution {
    match form.perm {
        Perm::Abc => Solution::new(s.x, s.y, s.z),
        Perm::Cab => Solution::new(s.y, s.z, s.x),
        Perm::Cba => Solution::new(s.z, s.y, s.x),
    }
}

pub(crate) fn decimal_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
