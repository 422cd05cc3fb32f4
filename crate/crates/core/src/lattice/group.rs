use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{to_i64, IntMatrix};
use super::snf::{column_basis, integer_kernel, smith_normal_form, IntSolver};

/// A finitely generated abelian group in invariant-factor normal form:
/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with `dᵢ | dᵢ₊₁` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PresentedAbGroup {
    pub rank: usize,
    pub invariant_factors: Vec<i64>,
}

impl PresentedAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        PresentedAbGroup { rank, invariant_factors: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (`0` meaning `ℤ`, `1` trivial).
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        cokernel(&m)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn direct_sum(&self, other: &PresentedAbGroup) -> PresentedAbGroup {
        let mut orders: Vec<i64> = vec![0; self.rank + other.rank];
        orders.extend(&self.invariant_factors);
        orders.extend(&other.invariant_factors);
        Self::from_cyclic_orders(&orders)
    }

    pub fn sum_all<'a>(groups: impl IntoIterator<Item = &'a PresentedAbGroup>) -> PresentedAbGroup {
        groups.into_iter().fold(Self::trivial(), |acc, g| acc.direct_sum(g))
    }
}

impl fmt::Display for PresentedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of `M : ℤ^cols → ℤ^rows`, in invariant-factor form.
pub fn cokernel(m: &IntMatrix) -> PresentedAbGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = m.rows() - diag.len();
    let invariant_factors = diag.iter().filter(|d| !d.is_one()).map(to_i64).collect();
    PresentedAbGroup { rank, invariant_factors }
}

/// A finitely presented abelian group `ℤ^gens / im(relations)`, keeping the
/// generators so that homomorphisms can be written as integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroup {
    pub relations: IntMatrix,
}

impl FpGroup {
    pub fn new(relations: IntMatrix) -> Self {
        FpGroup { relations }
    }

    pub fn free(n: usize) -> Self {
        FpGroup { relations: IntMatrix::zeros(n, 0) }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn normal_form(&self) -> PresentedAbGroup {
        cokernel(&self.relations)
    }

    /// Is `v` zero in this group?
    pub fn is_zero_elem(&self, v: &[BigInt]) -> bool {
        v.iter().all(Zero::is_zero) || IntSolver::new(&self.relations).contains(v)
    }

    pub fn direct_sum(&self, other: &FpGroup) -> FpGroup {
        FpGroup { relations: self.relations.block_diag(&other.relations) }
    }
}

/// A homomorphism of finitely presented groups, `matrix : ℤ^src.gens → ℤ^dst.gens`.
#[derive(Clone, Debug)]
pub struct FpHom {
    pub src: FpGroup,
    pub dst: FpGroup,
    pub matrix: IntMatrix,
}

impl FpHom {
    pub fn new(src: FpGroup, dst: FpGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.cols(), src.gens(), "hom source mismatch");
        assert_eq!(matrix.rows(), dst.gens(), "hom target mismatch");
        FpHom { src, dst, matrix }
    }

    pub fn zero(src: FpGroup, dst: FpGroup) -> Self {
        let matrix = IntMatrix::zeros(dst.gens(), src.gens());
        FpHom { src, dst, matrix }
    }

    /// Relations of the source map into relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let image = &self.matrix * &self.src.relations;
        let solver = IntSolver::new(&self.dst.relations);
        (0..image.cols()).all(|j| solver.contains(&image.col(j)))
    }

    pub fn compose(&self, after: &FpHom) -> FpHom {
        FpHom::new(self.src.clone(), after.dst.clone(), &after.matrix * &self.matrix)
    }

    /// True when the map is zero on every generator.
    pub fn is_zero(&self) -> bool {
        let solver = IntSolver::new(&self.dst.relations);
        (0..self.matrix.cols()).all(|j| solver.contains(&self.matrix.col(j)))
    }

    /// Generators (columns) of `{v : M v ∈ im R_dst}` inside `ℤ^src.gens`.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let n = self.src.gens();
        let stacked = self.matrix.hcat(&self.dst.relations);
        let k = integer_kernel(&stacked);
        let idx: Vec<usize> = (0..n).collect();
        let proj = k.select_rows(&idx);
        column_basis(&proj)
    }

    pub fn kernel(&self) -> PresentedAbGroup {
        let basis = self.kernel_lattice();
        subquotient(&basis, &self.src.relations)
    }

    pub fn cokernel(&self) -> PresentedAbGroup {
        cokernel(&self.matrix.hcat(&self.dst.relations))
    }

    pub fn image(&self) -> PresentedAbGroup {
        // im f ≅ src / ker f
        let ker = self.kernel_lattice();
        cokernel(&ker.hcat(&self.src.relations))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `lattice / relations`, where the columns of `relations` lie in the lattice
/// spanned by the columns of `basis` (a basis, i.e. independent columns).
pub fn subquotient(basis: &IntMatrix, relations: &IntMatrix) -> PresentedAbGroup {
    if basis.cols() == 0 {
        return PresentedAbGroup::trivial();
    }
    let solver = IntSolver::new(basis);
    let cols: Vec<Vec<BigInt>> = (0..relations.cols())
        .map(|j| {
            solver
                .solve(&relations.col(j))
                .expect("relation outside the lattice in subquotient")
        })
        .collect();
    cokernel(&IntMatrix::from_big_cols(basis.cols(), &cols))
}

/// Verdict of an exactness check at the middle of `A →f B →g C`.
pub fn is_exact_at(f: &FpHom, g: &FpHom) -> bool {
    assert_eq!(f.dst, g.src, "maps are not composable");
    if !f.compose(g).is_zero() {
        return false;
    }
    let ker = g.kernel_lattice();
    let im = IntSolver::new(&f.matrix.hcat(&f.dst.relations));
    (0..ker.cols()).all(|j| im.contains(&ker.col(j)))
}

pub(crate) fn abs_gcd(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(0i64, |g, v| num_integer::gcd(g, v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        let m = IntMatrix::from_rows(&[[2], [0]]);
        assert_eq!(cokernel(&m), PresentedAbGroup { rank: 1, invariant_factors: vec![2] });
        let empty = IntMatrix::zeros(2, 0);
        assert_eq!(cokernel(&empty), PresentedAbGroup::free(2));
    }

    #[test]
    fn cyclic_orders_merge() {
        let g = PresentedAbGroup::from_cyclic_orders(&[2, 3, 0, 1]);
        assert_eq!(g, PresentedAbGroup { rank: 1, invariant_factors: vec![6] });
        assert_eq!(g.to_string(), "Z + Z/6");
    }

    #[test]
    fn hom_kernel_cokernel() {
        // ℤ --(2)--> ℤ : injective, cokernel ℤ/2
        let f = FpHom::new(FpGroup::free(1), FpGroup::free(1), IntMatrix::from_rows(&[[2]]));
        assert!(f.is_injective());
        assert_eq!(f.cokernel(), PresentedAbGroup::from_cyclic_orders(&[2]));
        // ℤ --> ℤ/2 surjective with kernel 2ℤ ≅ ℤ
        let z2 = FpGroup::new(IntMatrix::from_rows(&[[2]]));
        let g = FpHom::new(FpGroup::free(1), z2.clone(), IntMatrix::from_rows(&[[1]]));
        assert!(g.is_well_defined());
        assert!(g.is_surjective());
        assert_eq!(g.kernel(), PresentedAbGroup::free(1));
        assert!(is_exact_at(&f, &g));
        let bad = FpHom::new(z2.clone(), FpGroup::free(1), IntMatrix::from_rows(&[[1]]));
        assert!(!bad.is_well_defined());
    }
}
