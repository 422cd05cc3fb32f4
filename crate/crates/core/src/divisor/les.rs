use num_bigint::BigInt;

use super::sheaf::{Cohomology, PosetSheaf, SheafMap};
use crate::error::{Error, Result};
use crate::lattice::{is_exact_at, FpGroup, FpHom, IntMatrix, IntSolver, PresentedAbGroup};

/// The six-term sequence
/// `0 → H⁰F → H⁰G → H⁰H → H¹F → H¹G → H¹H`
/// of a short exact sequence of sheaves `0 → F → G → H → 0`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    /// `H⁰F, H⁰G, H⁰H, H¹F, H¹G, H¹H` as presented groups.
    pub groups: Vec<PresentedAbGroup>,
    /// The cohomology groups with their cocycle generators.
    pub cohomology: Vec<Cohomology>,
    /// The five maps between consecutive terms; `maps[2]` is `δ`.
    pub maps: Vec<FpHom>,
    /// Exactness verdicts at `H⁰F` (injectivity), `H⁰G`, `H⁰H`, `H¹F`, `H¹G`.
    pub exact: Vec<bool>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    pub fn delta(&self) -> &FpHom {
        &self.maps[2]
    }
}

fn blocks(sheaf: &PosetSheaf, chains: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(chains.len());
    let mut off = 0;
    for c in chains {
        let n = sheaf.stalk(*c.last().expect("nonempty")).gens();
        out.push((off, n));
        off += n;
    }
    out
}

fn stalk_block(fp: &FpGroup, m: &IntMatrix) -> IntSolver {
    IntSolver::new(&m.hcat(&fp.relations))
}

/// Checks that `0 → F → G → H → 0` is exact at every stalk.
pub fn check_short_exact(phi: &SheafMap, psi: &SheafMap) -> Result<()> {
    for x in 0..phi.source.len() {
        let f = phi.stalk_hom(x);
        let g = psi.stalk_hom(x);
        if !f.is_injective() || !g.is_surjective() || !is_exact_at(&f, &g) {
            return Err(Error::Precondition(format!("sequence of sheaves is not short exact at point {x}")));
        }
    }
    Ok(())
}

/// Builds the long exact cohomology sequence of `0 → F →φ G →ψ H → 0`.
pub fn long_exact_sequence(phi: &SheafMap, psi: &SheafMap) -> Result<LongExactSequence> {
    check_short_exact(phi, psi)?;
    let (f, g, h) = (&phi.source, &phi.target, &psi.target);
    let coh: Vec<Cohomology> = vec![
        f.cohomology(0),
        g.cohomology(0),
        h.cohomology(0),
        f.cohomology(1),
        g.cohomology(1),
        h.cohomology(1),
    ];
    let delta = connecting_map(phi, psi, &coh[2], &coh[3])?;
    let maps = vec![
        phi.induced(&coh[0], &coh[1]),
        psi.induced(&coh[1], &coh[2]),
        delta,
        phi.induced(&coh[3], &coh[4]),
        psi.induced(&coh[4], &coh[5]),
    ];
    let exact = vec![
        maps[0].is_injective(),
        is_exact_at(&maps[0], &maps[1]),
        is_exact_at(&maps[1], &maps[2]),
        is_exact_at(&maps[2], &maps[3]),
        is_exact_at(&maps[3], &maps[4]),
    ];
    Ok(LongExactSequence { groups: coh.iter().map(Cohomology::presented).collect(), cohomology: coh, maps, exact })
}

/// `δ : H⁰H → H¹F`: lift a global section of `H` pointwise to `G`, take
/// its coboundary and pull it back to `F`.
fn connecting_map(phi: &SheafMap, psi: &SheafMap, h0: &Cohomology, f1: &Cohomology) -> Result<FpHom> {
    let g = &phi.target;
    let h = &psi.target;
    let f = &phi.source;
    let points = g.chains(0);
    let g_blocks = blocks(g, &points);
    let h_blocks = blocks(h, &points);
    let lifts: Vec<IntSolver> = (0..g.len()).map(|x| stalk_block(h.stalk(x), &psi.components[x])).collect();

    let edges = g.chains(1);
    let g1_blocks = blocks(g, &edges);
    let f1_blocks = blocks(f, &edges);

    let mut cols = Vec::with_capacity(h0.cycles.cols());
    for j in 0..h0.cycles.cols() {
        let z = h0.cycles.col(j);
        let mut lift: Vec<Vec<BigInt>> = Vec::with_capacity(points.len());
        for (x, &(off, n)) in h_blocks.iter().enumerate() {
            let w = lifts[x]
                .solve(&z[off..off + n])
                .ok_or_else(|| Error::Precondition(format!("section does not lift at point {x}")))?;
            lift.push(w[..g_blocks[x].1].to_vec());
        }
        // coboundary on each edge x₀ ⤳ x₁: a(x₁) − res(a(x₀))
        let mut pulled = Vec::new();
        for (k, e) in edges.iter().enumerate() {
            let (x0, x1) = (e[0], e[1]);
            let r = g.restriction(x0, x1).mul_vec(&lift[x0]);
            let diff: Vec<BigInt> = lift[x1].iter().zip(&r).map(|(a, b)| a - b).collect();
            debug_assert_eq!(diff.len(), g1_blocks[k].1);
            let solver = stalk_block(g.stalk(x1), &phi.components[x1]);
            let w = solver
                .solve(&diff)
                .ok_or_else(|| Error::Precondition("coboundary does not come from the subsheaf".into()))?;
            pulled.extend_from_slice(&w[..f1_blocks[k].1]);
        }
        let c = f1.class_of(&pulled).ok_or_else(|| Error::Precondition("pulled back cochain is not a cocycle".into()))?;
        cols.push(c);
    }
    Ok(FpHom::new(h0.group.clone(), f1.group.clone(), IntMatrix::from_big_cols(f1.cycles.cols(), &cols)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// `0 → ℤ →(×2) ℤ → ℤ/2 → 0` as constant sheaves on the ℙ¹ poset, and
    /// units-type sheaves where `H¹` appears.
    #[test]
    fn multiplication_by_two() {
        let opens = vec![vec![0], vec![0, 1], vec![0, 2]];
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), IntMatrix::identity(1));
        maps.insert((2, 0), IntMatrix::identity(1));
        let z = PosetSheaf::new(opens.clone(), vec![FpGroup::free(1); 3], maps.clone()).unwrap();
        let two = FpGroup::new(IntMatrix::from_rows(&[[2]]));
        let q = PosetSheaf::new(opens, vec![two; 3], maps).unwrap();
        let phi = SheafMap::new(&z, &z, vec![IntMatrix::from_rows(&[[2]]); 3]).unwrap();
        let psi = SheafMap::new(&z, &q, vec![IntMatrix::identity(1); 3]).unwrap();
        let les = long_exact_sequence(&phi, &psi).unwrap();
        assert!(les.is_exact());
        assert_eq!(les.groups[2], PresentedAbGroup::from_cyclic_orders(&[2]));
        assert!(les.delta().is_zero());
    }

    #[test]
    fn constant_modulo_units_on_projective_line() {
        // units 0 at the closed points, ℤ at the generic point; constant ℤ.
        let opens = vec![vec![0], vec![0, 1], vec![0, 2]];
        let mut unit_maps = BTreeMap::new();
        unit_maps.insert((1, 0), IntMatrix::zeros(1, 0));
        unit_maps.insert((2, 0), IntMatrix::zeros(1, 0));
        let units = PosetSheaf::new(opens.clone(), vec![FpGroup::free(1), FpGroup::trivial(), FpGroup::trivial()], unit_maps).unwrap();
        let mut cmaps = BTreeMap::new();
        cmaps.insert((1, 0), IntMatrix::identity(1));
        cmaps.insert((2, 0), IntMatrix::identity(1));
        let constant = PosetSheaf::new(opens, vec![FpGroup::free(1); 3], cmaps).unwrap();
        let incl = SheafMap::new(&units, &constant, vec![IntMatrix::identity(1), IntMatrix::zeros(1, 0), IntMatrix::zeros(1, 0)]).unwrap();
        let (_, quot) = incl.cokernel().unwrap();
        let les = long_exact_sequence(&incl, &quot).unwrap();
        assert!(les.is_exact());
        assert_eq!(les.groups[3], PresentedAbGroup::free(1));
        assert!(les.delta().is_surjective());
    }
}
