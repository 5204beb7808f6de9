//! The admissible field sizes and `PGL₂(q)` on the projective line.

use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{closure, ElemSet, Generators, PermGroup};
use crate::perm::Perm;

/// Which hypothesis to read into the field-size lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QReading {
    /// Any integer `q > 1` with `q − 1` a power of two.
    Literal,
    /// `q` a prime power with `q − 1 ≥ 4` a power of two.
    PrimePower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    QMinusOneNotTwoPower,
    /// `q − 1 < 4` under the prime-power reading.
    QMinusOneBelowFour,
    /// `q = 3`: fits the literal hypothesis, not the conclusion.
    QIsThree,
    CompositeNotPrimePower,
    /// A prime power `p^e`, `e ≥ 2`, other than 9.
    OtherPrimePower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "reason")]
pub enum QVerdict {
    Two,
    Nine,
    FermatPrime,
    Excluded(Exclusion),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QClass {
    pub q: u64,
    pub verdict: QVerdict,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `n = p^e`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

pub fn classify_q(q: u64, reading: QReading) -> QClass {
    use Exclusion::*;
    let verdict = if q < 2 || !(q - 1).is_power_of_two() {
        QVerdict::Excluded(QMinusOneNotTwoPower)
    } else {
        match reading {
            QReading::Literal => match q {
                2 => QVerdict::Two,
                3 => QVerdict::Excluded(QIsThree),
                9 => QVerdict::Nine,
                _ if is_prime(q) => QVerdict::FermatPrime,
                _ if prime_power(q).is_some() => QVerdict::Excluded(OtherPrimePower),
                _ => QVerdict::Excluded(CompositeNotPrimePower),
            },
            QReading::PrimePower => match prime_power(q) {
                _ if q - 1 < 4 => QVerdict::Excluded(QMinusOneBelowFour),
                None => QVerdict::Excluded(CompositeNotPrimePower),
                Some((_, 1)) => QVerdict::FermatPrime,
                Some(_) if q == 9 => QVerdict::Nine,
                Some(_) => QVerdict::Excluded(OtherPrimePower),
            },
        }
    };
    QClass { q, verdict }
}

impl QClass {
    pub fn admitted(&self) -> bool {
        !matches!(self.verdict, QVerdict::Excluded(_))
    }
}

/// The `q` up to `limit` admitted under `reading`, by sieving every prime
/// power (prime-power reading) or every integer (literal reading).
pub fn q_sieve(limit: u64, reading: QReading) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut candidates = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
        let mut pe = p as u64;
        while pe <= limit {
            candidates.push(pe);
            pe *= p as u64;
        }
    }
    if reading == QReading::Literal {
        candidates = (2..=limit).collect();
    }
    candidates.sort_unstable();
    candidates
        .into_iter()
        .filter(|&q| classify_q(q, reading).admitted())
        .collect()
}

/// `GF(q)` for `q` prime or `q = 9`, elements numbered `0..q` with `0` and
/// `1` the field zero and one.
#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if q == 9 {
            // a + b·i with i² = −1, stored as a + 3b
            let enc = |a: usize, b: usize| a % 3 + 3 * (b % 3);
            let mut add = alloc::vec![0; 81];
            let mut mul = alloc::vec![0; 81];
            for x in 0..9 {
                for y in 0..9 {
                    let (a, b, c, d) = (x % 3, x / 3, y % 3, y / 3);
                    add[x * 9 + y] = enc(a + c, b + d);
                    mul[x * 9 + y] = enc(a * c + 2 * b * d, a * d + b * c);
                }
            }
            return Ok(Field { q: 9, add, mul });
        }
        if !is_prime(q) || q > 1 << 16 {
            return Err(Error::UnsupportedField(q));
        }
        let q = q as usize;
        let mut add = alloc::vec![0; q * q];
        let mut mul = alloc::vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                add[x * q + y] = (x + y) % q;
                mul[x * q + y] = (x * y) % q;
            }
        }
        Ok(Field { q, add, mul })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.q + y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.q + y]
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.q).find(|&y| self.add(x, y) == 0).unwrap()
    }

    pub fn inv(&self, x: usize) -> Option<usize> {
        (1..self.q).find(|&y| self.mul(x, y) == 1)
    }

    /// The least generator of the multiplicative group.
    pub fn primitive(&self) -> usize {
        (1..self.q)
            .find(|&w| {
                let mut x = w;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, w);
                    k += 1;
                }
                k == self.q - 1
            })
            .unwrap()
    }

    /// `z ↦ (az + b)/(cz + d)` on the points `0..q` plus `∞ = q`.
    pub fn mobius(&self, [a, b, c, d]: [usize; 4]) -> Perm {
        let inf = self.q;
        let img = (0..=self.q).map(|z| {
            let (num, den) = if z == inf {
                (a, c)
            } else {
                (self.add(self.mul(a, z), b), self.add(self.mul(c, z), d))
            };
            match self.inv(den) {
                Some(di) => self.mul(num, di),
                None => inf,
            }
        });
        Perm::from_usize(&img.collect::<Vec<_>>()).expect("invertible Möbius map")
    }
}

/// `PGL₂(q)` on the `q + 1` points of the projective line (`∞ = q`).
#[derive(Clone, Debug)]
pub struct Pgl2 {
    pub q: u64,
    pub group: PermGroup,
    /// The index-2 subgroup `PSL₂(q)` (all of it when `q` is even).
    pub psl: ElemSet,
    /// Stabilizer of `∞`, of order `q(q − 1)`.
    pub borel: ElemSet,
}

pub fn make_pgl2(q: u64, cap: usize) -> Result<Pgl2> {
    let f = Field::new(q)?;
    let w = f.primitive();
    let one = 1;
    let translate = f.mobius([one, one, 0, one]);
    let scale = f.mobius([w, 0, 0, one]);
    let invert = f.mobius([0, one, one, 0]);
    let group = Generators::new(f.size() + 1, alloc::vec![translate.clone(), scale, invert])?
        .materialize(cap)?;
    let square = f.mobius([f.mul(w, w), 0, 0, one]);
    let neg_invert = f.mobius([0, f.neg(one), one, 0]);
    let psl_gens: Vec<usize> = [translate, square, neg_invert]
        .iter()
        .map(|p| group.index_of(p).unwrap())
        .collect();
    let psl = closure(&group, &psl_gens);
    let borel = group.stabilizer(f.size());
    Ok(Pgl2 {
        q,
        group,
        psl,
        borel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{involutions, FiniteGroup, DEFAULT_CAP};
    use alloc::vec;

    #[test]
    fn classify_examples() {
        let c = |q| classify_q(q, QReading::PrimePower).verdict;
        assert_eq!(c(5), QVerdict::FermatPrime);
        assert_eq!(c(9), QVerdict::Nine);
        assert_eq!(c(13), QVerdict::Excluded(Exclusion::QMinusOneNotTwoPower));
        assert_eq!(c(33), QVerdict::Excluded(Exclusion::CompositeNotPrimePower));
        assert_eq!(c(3), QVerdict::Excluded(Exclusion::QMinusOneBelowFour));
        let l = |q| classify_q(q, QReading::Literal).verdict;
        assert_eq!(l(2), QVerdict::Two);
        assert_eq!(l(3), QVerdict::Excluded(Exclusion::QIsThree));
        assert_eq!(l(33), QVerdict::Excluded(Exclusion::CompositeNotPrimePower));
        assert_eq!(l(17), QVerdict::FermatPrime);
    }

    #[test]
    fn fermat_verdict_means_prime() {
        for q in 2..5000u64 {
            for r in [QReading::Literal, QReading::PrimePower] {
                if classify_q(q, r).verdict == QVerdict::FermatPrime {
                    assert!(is_prime(q) && (q - 1).is_power_of_two() && q >= 5);
                }
            }
        }
    }

    #[test]
    fn literal_sieve_small() {
        assert_eq!(q_sieve(300, QReading::Literal), vec![2, 5, 9, 17, 257]);
    }

    #[test]
    fn prime_power_sieve_to_2_20() {
        assert_eq!(q_sieve(1 << 20, QReading::PrimePower), vec![5, 9, 17, 257, 65537]);
    }

    #[test]
    fn gf9_is_a_field() {
        let f = Field::new(9).unwrap();
        for x in 1..9 {
            assert!(f.inv(x).is_some());
        }
        assert_eq!(f.primitive(), 4);
    }

    #[test]
    fn pgl2_orders() {
        for q in [5u64, 9, 17] {
            let g = make_pgl2(q, DEFAULT_CAP).unwrap();
            let n = (q * (q - 1) * (q + 1)) as usize;
            assert_eq!(g.group.order(), n);
            assert_eq!(g.psl.len(), n / 2);
            assert_eq!(g.borel.len(), (q * (q - 1)) as usize);
            assert_eq!(g.group.order() / g.borel.len(), (q + 1) as usize);
        }
    }

    #[test]
    fn pgl2_5_involutions_outside_psl() {
        let g = make_pgl2(5, DEFAULT_CAP).unwrap();
        let outside = involutions(&g.group)
            .into_iter()
            .filter(|&x| !g.psl.contains(x))
            .count();
        assert_eq!(outside, 10);
    }

    #[test]
    fn unsupported_fields() {
        assert_eq!(make_pgl2(4, DEFAULT_CAP).unwrap_err(), Error::UnsupportedField(4));
        assert_eq!(make_pgl2(25, DEFAULT_CAP).unwrap_err(), Error::UnsupportedField(25));
    }
}
