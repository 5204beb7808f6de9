//! Finite loops as Latin squares with identity `0`.

mod iso;
mod sub;

pub use iso::{canonical_form, element_invariants, find_loop_isomorphism, loop_invariants, relabel};
pub use sub::{SolubleSeries, MAX_LATTICE_ORDER};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{lcm, Perm};

/// A finite loop on `{0, …, n−1}` with identity `0`; `table[i·n + j] = i∘j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    n: usize,
    table: Vec<usize>,
}

/// A law that either holds or fails with its lexicographically first
/// counterexample.
pub type Verdict<W> = core::result::Result<(), W>;

impl Loop {
    /// Validates a row-major table: square, in range, Latin, with `0` as a
    /// two-sided identity.
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::MalformedTable("table is not n×n"));
        }
        if n == 0 {
            return Err(Error::MalformedTable("empty table"));
        }
        if table.iter().any(|&v| v >= n) {
            return Err(Error::MalformedTable("entry out of range"));
        }
        for i in 0..n {
            let mut seen = alloc::vec![false; n];
            for j in 0..n {
                let v = table[i * n + j];
                if core::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatin {
                        line: "row",
                        index: i,
                        value: v,
                    });
                }
            }
        }
        for j in 0..n {
            let mut seen = alloc::vec![false; n];
            for i in 0..n {
                let v = table[i * n + j];
                if core::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatin {
                        line: "column",
                        index: j,
                        value: v,
                    });
                }
            }
        }
        if (0..n).any(|i| table[i] != i || table[i * n] != i) {
            return Err(Error::NoIdentity);
        }
        Ok(Loop { n, table })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable("table is not square"));
        }
        Self::new(n, rows.concat())
    }

    /// The caller guarantees the loop axioms.
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert!(Self::new(n, table.clone()).is_ok());
        Loop { n, table }
    }

    /// Cayley table of a group, in the group's own element order.
    pub fn from_group<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .collect();
        Loop { n, table }
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Loop { n, table }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Right translation `ρx : y ↦ y∘x`.
    pub fn rho(&self, x: usize) -> Perm {
        Perm::from_images_unchecked((0..self.n).map(|y| self.mul(y, x) as u32).collect())
    }

    /// Left translation `λx : y ↦ x∘y`.
    pub fn lambda(&self, x: usize) -> Perm {
        Perm::from_images_unchecked(self.row(x).iter().map(|&v| v as u32).collect())
    }

    /// `a / b`: the unique `w` with `w∘b = a`.
    pub fn rdiv(&self, a: usize, b: usize) -> usize {
        (0..self.n).find(|&w| self.mul(w, b) == a).unwrap()
    }

    /// `a \ b`: the unique `w` with `a∘w = b`.
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.row(a).iter().position(|&v| v == b).unwrap()
    }

    /// Right inverse: the `y` with `x∘y = 0`.
    pub fn right_inverse(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    /// Left inverse: the `y` with `y∘x = 0`.
    pub fn left_inverse(&self, x: usize) -> usize {
        self.rdiv(0, x)
    }

    /// Two-sided inverse table, failing on the first element whose left and
    /// right inverses differ.
    pub fn inverses(&self) -> Result<Vec<usize>> {
        (0..self.n)
            .map(|x| {
                let y = self.right_inverse(x);
                if self.mul(y, x) == 0 {
                    Ok(y)
                } else {
                    Err(Error::NoTwoSidedInverse(x))
                }
            })
            .collect()
    }

    pub fn check_associative(&self) -> Verdict<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                for z in 0..self.n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_group(&self) -> bool {
        self.check_associative().is_ok()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Right Bol identity `((x∘y)∘z)∘y = x∘((y∘z)∘y)`, scanned over all
    /// triples in lexicographic order.
    pub fn check_bol(&self) -> Verdict<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                for z in 0..self.n {
                    let lhs = self.mul(self.mul(xy, z), y);
                    let rhs = self.mul(x, self.mul(self.mul(y, z), y));
                    if lhs != rhs {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_bol(&self) -> bool {
        self.check_bol().is_ok()
    }

    /// Right powers `x, x∘x, (x∘x)∘x, …` until `0`; in a Bol loop this is
    /// the cyclic group `⟨x⟩`.
    fn power_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
            debug_assert!(k <= self.n);
        }
        k
    }

    /// Order of `x`; refused outside Bol loops where powers are ambiguous.
    pub fn element_order(&self, x: usize) -> Result<usize> {
        if let Err((a, b, c)) = self.check_bol() {
            return Err(Error::NotBol(a, b, c));
        }
        Ok(self.power_order(x))
    }

    /// Orders of all elements; one Bol check for the whole table.
    pub fn element_orders(&self) -> Result<Vec<usize>> {
        if let Err((a, b, c)) = self.check_bol() {
            return Err(Error::NotBol(a, b, c));
        }
        Ok((0..self.n).map(|x| self.power_order(x)).collect())
    }

    pub fn exponent(&self) -> Result<usize> {
        Ok(self.element_orders()?.into_iter().fold(1, lcm))
    }

    /// Automorphic inverse property `(x∘y)⁻¹ = x⁻¹∘y⁻¹`.
    pub fn check_aip(&self) -> Result<Verdict<(usize, usize)>> {
        let inv = self.inverses()?;
        for x in 0..self.n {
            for y in 0..self.n {
                if inv[self.mul(x, y)] != self.mul(inv[x], inv[y]) {
                    return Ok(Err((x, y)));
                }
            }
        }
        Ok(Ok(()))
    }

    /// Bruck = Bol + AIP, evaluated independently of [`Loop::check_bol`]
    /// and [`Loop::check_aip`]: Bol through right translations
    /// (`ρy ρz ρy = ρ_{(y∘z)∘y}`) and AIP as "left inversion is a
    /// homomorphism".
    pub fn is_bruck(&self) -> bool {
        let n = self.n;
        let rho: Vec<Perm> = (0..n).map(|x| self.rho(x)).collect();
        for y in 0..n {
            for z in 0..n {
                let w = self.mul(self.mul(y, z), y);
                if rho[y].then(&rho[z]).then(&rho[y]) != rho[w] {
                    return false;
                }
            }
        }
        let inv: Vec<usize> = (0..n).map(|x| self.left_inverse(x)).collect();
        if (0..n).any(|x| self.mul(x, inv[x]) != 0) {
            return false;
        }
        (0..n).all(|x| (0..n).all(|y| inv[self.mul(x, y)] == self.mul(inv[x], inv[y])))
    }

    /// `h_{x,y} = ρx ρy ρ_{x∘y}⁻¹` as a point map `u ↦ ((u∘x)∘y) / (x∘y)`.
    pub fn h_map(&self, x: usize, y: usize) -> Vec<usize> {
        let xy = self.mul(x, y);
        let mut col_inv = alloc::vec![0; self.n];
        for w in 0..self.n {
            col_inv[self.mul(w, xy)] = w;
        }
        (0..self.n)
            .map(|u| col_inv[self.mul(self.mul(u, x), y)])
            .collect()
    }

    /// `A_r` property: every `h_{x,y}` is an automorphism; the witness is the
    /// first `(x, y, u, v)` with `(u∘v)^h ≠ u^h ∘ v^h`.
    pub fn check_ar(&self) -> Verdict<(usize, usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let h = self.h_map(x, y);
                for u in 0..n {
                    for v in 0..n {
                        if h[self.mul(u, v)] != self.mul(h[u], h[v]) {
                            return Err((x, y, u, v));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a bijection `map` fixing `0`: the result satisfies
    /// `map(x)∘map(y) = map(x∘y)`.
    pub fn relabel(&self, map: &[usize]) -> Loop {
        relabel(self, map)
    }
}

impl core::fmt::Debug for Loop {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "loop {}", self.n)?;
        for r in self.table.chunks(self.n) {
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    /// The smallest nonassociative loop used across the test suite.
    pub(crate) fn order5() -> Loop {
        Loop::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
    }

    pub(crate) fn s3() -> Loop {
        let g = crate::group::PermGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            100,
        )
        .unwrap();
        Loop::from_group(&g)
    }

    pub(crate) fn elementary_abelian(k: usize) -> Loop {
        let n = 1 << k;
        Loop::new(n, (0..n * n).map(|i| (i / n) ^ (i % n)).collect()).unwrap()
    }

    fn oracle_bol(l: &Loop) -> bool {
        let n = l.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    l.mul(l.mul(l.mul(x, y), z), y) == l.mul(x, l.mul(l.mul(y, z), y))
                })
            })
        })
    }

    #[test]
    fn validation() {
        assert!(Loop::cyclic(5).is_group());
        let bad = Loop::from_rows(&[vec![0, 1, 1], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(
            bad,
            Err(Error::NotLatin {
                line: "row",
                index: 0,
                value: 1
            })
        );
        let no_id = Loop::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(no_id, Err(Error::NoIdentity));
        let l = order5();
        assert!(!l.is_group());
        assert!(Loop::from_rows(&[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn bol_verdicts() {
        assert!(Loop::cyclic(6).is_bol());
        assert!(s3().is_bol());
        assert!(elementary_abelian(3).is_bol());
        let l = order5();
        let w = l.check_bol().unwrap_err();
        assert!(!oracle_bol(&l));
        let (x, y, z) = w;
        assert_ne!(
            l.mul(l.mul(l.mul(x, y), z), y),
            l.mul(x, l.mul(l.mul(y, z), y))
        );
        assert_eq!(l.element_orders(), Err(Error::NotBol(x, y, z)));
    }

    #[test]
    fn orders_and_exponent() {
        let c12 = Loop::cyclic(12);
        assert_eq!(c12.element_order(1), Ok(12));
        assert_eq!(c12.element_order(0), Ok(1));
        assert_eq!(c12.exponent(), Ok(12));
        assert_eq!(elementary_abelian(3).exponent(), Ok(2));
    }

    #[test]
    fn aip_and_bruck() {
        assert_eq!(Loop::cyclic(7).check_aip(), Ok(Ok(())));
        assert!(matches!(s3().check_aip(), Ok(Err(_))));
        assert!(!s3().is_bruck());
        assert!(elementary_abelian(3).is_bruck());
        assert!(Loop::cyclic(4).is_bruck());
        assert!(!order5().is_bruck());
    }

    #[test]
    fn ar_property() {
        assert!(s3().check_ar().is_ok());
        assert!(Loop::cyclic(5).check_ar().is_ok());
        let l = Loop::cyclic(4);
        for x in 0..4 {
            assert_eq!(l.h_map(0, x), vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn translations_are_bijections() {
        let l = order5();
        for x in 0..5 {
            assert!(Perm::from_images(l.rho(x).images().to_vec()).is_ok());
            assert!(Perm::from_images(l.lambda(x).images().to_vec()).is_ok());
            assert_eq!(l.mul(l.rdiv(3, x), x), 3);
            assert_eq!(l.mul(x, l.ldiv(x, 3)), 3);
        }
    }
}
