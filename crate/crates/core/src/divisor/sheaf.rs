use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{FpGroup, FpHom, IntMatrix, IntSolver, PresentedAbGroup};
use crate::scheme::MonoidScheme;

/// A sheaf of finitely generated abelian groups on a finite poset, given
/// by its stalks and the generization maps `F_x → F_y` for `y ∈ U_x`.
#[derive(Clone, Debug)]
pub struct PosetSheaf {
    /// `opens[x]`: sorted points of `U_x`, including `x`.
    opens: Vec<Vec<usize>>,
    stalks: Vec<FpGroup>,
    maps: BTreeMap<(usize, usize), IntMatrix>,
}

/// A morphism of sheaves on the same poset, one matrix per point.
#[derive(Clone, Debug)]
pub struct SheafMap {
    pub source: PosetSheaf,
    pub target: PosetSheaf,
    pub components: Vec<IntMatrix>,
}

/// `H^p` as a presented group together with the cocycles generating it.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    /// Generators are the columns of `cycles`.
    pub group: FpGroup,
    /// Basis of the cocycle lattice in cochain coordinates.
    pub cycles: IntMatrix,
}

impl Cohomology {
    pub fn presented(&self) -> PresentedAbGroup {
        self.group.normal_form()
    }

    /// Coordinates of a cocycle with respect to `cycles`.
    pub fn class_of(&self, cocycle: &[BigInt]) -> Option<Vec<BigInt>> {
        IntSolver::new(&self.cycles).solve(cocycle)
    }
}

impl PosetSheaf {
    pub fn new(opens: Vec<Vec<usize>>, stalks: Vec<FpGroup>, maps: BTreeMap<(usize, usize), IntMatrix>) -> Result<Self> {
        if opens.len() != stalks.len() {
            return Err(Error::Precondition("one stalk per point is required".into()));
        }
        let mut opens = opens;
        for o in &mut opens {
            o.sort();
            o.dedup();
        }
        let sheaf = PosetSheaf { opens, stalks, maps };
        sheaf.check()?;
        Ok(sheaf)
    }

    /// Poset of a scheme, with stalks and maps supplied by closures.
    pub fn on_scheme(
        x: &MonoidScheme,
        stalk: impl Fn(usize) -> FpGroup,
        map: impl Fn(usize, usize) -> IntMatrix,
    ) -> Result<Self> {
        let opens: Vec<Vec<usize>> = (0..x.len()).map(|p| x.open_of(p)).collect();
        let stalks: Vec<FpGroup> = (0..x.len()).map(&stalk).collect();
        let mut maps = BTreeMap::new();
        for (p, open) in opens.iter().enumerate() {
            for &q in open {
                if q != p {
                    maps.insert((p, q), map(p, q));
                }
            }
        }
        Self::new(opens, stalks, maps)
    }

    fn check(&self) -> Result<()> {
        for (x, open) in self.opens.iter().enumerate() {
            if !open.contains(&x) {
                return Err(Error::Precondition(format!("U_{x} must contain {x}")));
            }
            for &y in open {
                if y == x {
                    continue;
                }
                let m = self
                    .maps
                    .get(&(x, y))
                    .ok_or_else(|| Error::Precondition(format!("missing restriction {x}->{y}")))?;
                let hom = FpHom::new(self.stalks[x].clone(), self.stalks[y].clone(), m.clone());
                if !hom.is_well_defined() {
                    return Err(Error::Precondition(format!("restriction {x}->{y} is not well defined")));
                }
                for &z in &self.opens[y] {
                    if z == y {
                        continue;
                    }
                    let direct = FpHom::new(self.stalks[x].clone(), self.stalks[z].clone(), self.restriction(x, z));
                    let via = &self.restriction(y, z) * m;
                    let diff = difference(&direct.matrix, &via);
                    let diff = FpHom::new(self.stalks[x].clone(), self.stalks[z].clone(), diff);
                    if !diff.is_zero() {
                        return Err(Error::Precondition(format!("restrictions {x}->{y}->{z} do not compose")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.stalks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stalks.is_empty()
    }

    pub fn stalk(&self, x: usize) -> &FpGroup {
        &self.stalks[x]
    }

    pub fn opens(&self) -> &[Vec<usize>] {
        &self.opens
    }

    pub fn restriction(&self, x: usize, y: usize) -> IntMatrix {
        if x == y {
            IntMatrix::identity(self.stalks[x].gens())
        } else {
            self.maps[&(x, y)].clone()
        }
    }

    /// Strict chains `x₀ ⤳ x₁ ⤳ … ⤳ x_p`, each `x_{i+1} ∈ U_{x_i}`,
    /// `x_{i+1} ≠ x_i`, in lexicographic order.
    pub fn chains(&self, p: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.len()).map(|x| vec![x]).collect();
        for _ in 0..p {
            let mut next = Vec::new();
            for c in &out {
                let last = *c.last().expect("chains are nonempty");
                for &y in &self.opens[last] {
                    if y != last {
                        let mut d = c.clone();
                        d.push(y);
                        next.push(d);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Cochain group `C^p` and the offsets of its chain blocks.
    fn cochains(&self, p: usize) -> (Vec<Vec<usize>>, Vec<usize>, FpGroup) {
        let chains = self.chains(p);
        let mut offsets = Vec::with_capacity(chains.len());
        let mut rel = IntMatrix::zeros(0, 0);
        let mut total = 0;
        for c in &chains {
            offsets.push(total);
            let s = &self.stalks[*c.last().expect("nonempty")];
            total += s.gens();
            rel = rel.block_diag(&s.relations);
        }
        (chains, offsets, FpGroup::new(rel))
    }

    /// Differential `d^p : C^p → C^{p+1}`.
    fn differential(&self, p: usize) -> (FpGroup, FpGroup, IntMatrix) {
        let (src_chains, src_off, src) = self.cochains(p);
        let (dst_chains, dst_off, dst) = self.cochains(p + 1);
        let index: BTreeMap<&Vec<usize>, usize> = src_chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut d = IntMatrix::zeros(dst.gens(), src.gens());
        for (k, sigma) in dst_chains.iter().enumerate() {
            let row0 = dst_off[k];
            for i in 0..=p + 1 {
                let mut face = sigma.clone();
                face.remove(i);
                let col0 = src_off[index[&face]];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let block = if i == p + 1 {
                    self.restriction(sigma[p], sigma[p + 1])
                } else {
                    IntMatrix::identity(self.stalks[sigma[p + 1]].gens())
                };
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = &block[(r, c)];
                        if !v.is_zero() {
                            d[(row0 + r, col0 + c)] += v * sign;
                        }
                    }
                }
            }
        }
        (src, dst, d)
    }

    pub fn cohomology(&self, p: usize) -> Cohomology {
        let (src, dst, d) = self.differential(p);
        let hom = FpHom::new(src.clone(), dst, d);
        let cycles = hom.kernel_lattice();
        let boundaries = if p == 0 {
            src.relations.clone()
        } else {
            let (_, _, prev) = self.differential(p - 1);
            prev.hcat(&src.relations)
        };
        let solver = IntSolver::new(&cycles);
        let cols: Vec<Vec<BigInt>> = (0..boundaries.cols())
            .map(|j| solver.solve(&boundaries.col(j)).expect("boundaries are cocycles"))
            .collect();
        let relations = IntMatrix::from_big_cols(cycles.cols(), &cols);
        Cohomology { degree: p, group: FpGroup::new(relations), cycles }
    }

    pub fn cohomology_groups(&self, max_degree: usize) -> Vec<PresentedAbGroup> {
        (0..=max_degree).map(|p| self.cohomology(p).presented()).collect()
    }

    /// `F ⊕ G` on the same poset.
    pub fn direct_sum(&self, other: &PosetSheaf) -> Result<PosetSheaf> {
        if self.opens != other.opens {
            return Err(Error::Precondition("sheaves live on different posets".into()));
        }
        let stalks = self.stalks.iter().zip(&other.stalks).map(|(a, b)| a.direct_sum(b)).collect();
        let maps = self
            .maps
            .iter()
            .map(|(k, m)| (*k, m.block_diag(&other.maps[k])))
            .collect();
        PosetSheaf::new(self.opens.clone(), stalks, maps)
    }

    /// Direct image along a map of posets `Y → X`. `over[x]` lists the
    /// points of `Y` whose minimal opens cover the preimage of `U_x`
    /// disjointly; `opens_x` are the minimal opens of `X`.
    pub fn pushforward(&self, opens_x: &[Vec<usize>], over: &[Vec<usize>]) -> Result<PosetSheaf> {
        let stalks: Vec<FpGroup> = over
            .iter()
            .map(|ys| ys.iter().fold(FpGroup::trivial(), |acc, &y| acc.direct_sum(&self.stalks[y])))
            .collect();
        let mut maps = BTreeMap::new();
        for (x, open) in opens_x.iter().enumerate() {
            for &z in open {
                if z == x {
                    continue;
                }
                let mut m = IntMatrix::zeros(stalks[z].gens(), stalks[x].gens());
                let mut col0 = 0;
                for &a in &over[x] {
                    let mut row0 = 0;
                    for &b in &over[z] {
                        if self.opens[a].contains(&b) {
                            let block = self.restriction(a, b);
                            for r in 0..block.rows() {
                                for c in 0..block.cols() {
                                    m[(row0 + r, col0 + c)] = block[(r, c)].clone();
                                }
                            }
                        }
                        row0 += self.stalks[b].gens();
                    }
                    col0 += self.stalks[a].gens();
                }
                maps.insert((x, z), m);
            }
        }
        PosetSheaf::new(opens_x.to_vec(), stalks, maps)
    }
}

fn difference(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] -= &b[(i, j)];
        }
    }
    out
}

impl SheafMap {
    pub fn new(source: &PosetSheaf, target: &PosetSheaf, components: Vec<IntMatrix>) -> Result<Self> {
        if source.opens != target.opens || components.len() != source.len() {
            return Err(Error::Precondition("sheaf map between different posets".into()));
        }
        let map = SheafMap { source: source.clone(), target: target.clone(), components };
        for x in 0..source.len() {
            if !map.stalk_hom(x).is_well_defined() {
                return Err(Error::Precondition(format!("sheaf map is not well defined at {x}")));
            }
            for &y in &source.opens[x] {
                if y == x {
                    continue;
                }
                let lhs = &target.restriction(x, y) * &map.components[x];
                let rhs = &map.components[y] * &source.restriction(x, y);
                let hom = FpHom::new(source.stalks[x].clone(), target.stalks[y].clone(), difference(&lhs, &rhs));
                if !hom.is_zero() {
                    return Err(Error::Precondition(format!("sheaf map does not commute with {x}->{y}")));
                }
            }
        }
        Ok(map)
    }

    pub fn stalk_hom(&self, x: usize) -> FpHom {
        FpHom::new(self.source.stalks[x].clone(), self.target.stalks[x].clone(), self.components[x].clone())
    }

    /// The induced map on `p`-cochains.
    fn cochain_matrix(&self, p: usize) -> IntMatrix {
        let chains = self.source.chains(p);
        let mut m = IntMatrix::zeros(0, 0);
        for c in &chains {
            m = m.block_diag(&self.components[*c.last().expect("nonempty")]);
        }
        m
    }

    /// `H^p(F) → H^p(G)` in the generators of the two cohomology groups.
    pub fn induced(&self, hf: &Cohomology, hg: &Cohomology) -> FpHom {
        let cm = self.cochain_matrix(hf.degree);
        let image = &cm * &hf.cycles;
        let solver = IntSolver::new(&hg.cycles);
        let cols: Vec<Vec<BigInt>> = (0..image.cols())
            .map(|j| solver.solve(&image.col(j)).expect("cocycles map to cocycles"))
            .collect();
        FpHom::new(hf.group.clone(), hg.group.clone(), IntMatrix::from_big_cols(hg.cycles.cols(), &cols))
    }

    /// Cokernel sheaf `G / φ(F)` with the quotient map.
    pub fn cokernel(&self) -> Result<(PosetSheaf, SheafMap)> {
        let stalks: Vec<FpGroup> = (0..self.target.len())
            .map(|x| FpGroup::new(self.target.stalks[x].relations.hcat(&self.components[x])))
            .collect();
        let q = PosetSheaf::new(self.target.opens.clone(), stalks, self.target.maps.clone())?;
        let ids = (0..q.len()).map(|x| IntMatrix::identity(q.stalks[x].gens())).collect();
        let map = SheafMap::new(&self.target, &q, ids)?;
        Ok((q, map))
    }

    /// Componentwise `(φ, ψ) : F → G ⊕ H`.
    pub fn pair(&self, other: &SheafMap) -> Result<SheafMap> {
        let target = self.target.direct_sum(&other.target)?;
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a.vcat(b)).collect();
        SheafMap::new(&self.source, &target, comps)
    }

    /// Componentwise `φ - ψ : F ⊕ G → H`.
    pub fn difference_from_sum(&self, other: &SheafMap) -> Result<SheafMap> {
        let source = self.source.direct_sum(&other.source)?;
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                let mut neg = b.clone();
                for i in 0..neg.rows() {
                    for j in 0..neg.cols() {
                        neg[(i, j)] = -neg[(i, j)].clone();
                    }
                }
                a.hcat(&neg)
            })
            .collect();
        SheafMap::new(&source, &self.target, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_poset() -> Vec<Vec<usize>> {
        // 0 generic; 1, 2 closed points specializing from 0 (ℙ¹ shape)
        vec![vec![0], vec![0, 1], vec![0, 2]]
    }

    #[test]
    fn projective_line_units() {
        let stalks = vec![FpGroup::free(1), FpGroup::trivial(), FpGroup::trivial()];
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), IntMatrix::zeros(1, 0));
        maps.insert((2, 0), IntMatrix::zeros(1, 0));
        let f = PosetSheaf::new(line_poset(), stalks, maps).unwrap();
        let h = f.cohomology_groups(2);
        assert_eq!(h, vec![PresentedAbGroup::trivial(), PresentedAbGroup::free(1), PresentedAbGroup::trivial()]);
    }

    #[test]
    fn constant_sheaf_on_irreducible_space() {
        let stalks = vec![FpGroup::free(1); 3];
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), IntMatrix::identity(1));
        maps.insert((2, 0), IntMatrix::identity(1));
        let f = PosetSheaf::new(line_poset(), stalks, maps).unwrap();
        assert_eq!(f.cohomology_groups(1), vec![PresentedAbGroup::free(1), PresentedAbGroup::trivial()]);
    }

    #[test]
    fn single_point() {
        let f = PosetSheaf::new(vec![vec![0]], vec![FpGroup::new(IntMatrix::from_rows(&[[3]]))], BTreeMap::new()).unwrap();
        assert_eq!(f.cohomology_groups(1), vec![PresentedAbGroup::from_cyclic_orders(&[3]), PresentedAbGroup::trivial()]);
    }

    #[test]
    fn non_functorial_data_is_rejected() {
        // chain 2 -> 1 -> 0 with a direct map that does not match the composite
        let opens = vec![vec![0], vec![0, 1], vec![0, 1, 2]];
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), IntMatrix::identity(1));
        maps.insert((2, 1), IntMatrix::identity(1));
        maps.insert((2, 0), IntMatrix::from_rows(&[[2]]));
        assert!(PosetSheaf::new(opens, vec![FpGroup::free(1); 3], maps).is_err());
    }
}
