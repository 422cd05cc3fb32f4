use std::collections::{BTreeMap, HashSet};

/// A sheaf of finite abelian groups on a finite poset: stalk `x` is
/// `⊕ ℤ/moduli[x][i]`, and `maps[(x, y)]` (rows × columns) sends `F_x` to
/// `F_y` for every strict generization `y` of `x`.
#[derive(Clone, Debug)]
pub struct RawSheaf {
    pub opens: Vec<Vec<usize>>,
    pub moduli: Vec<Vec<i64>>,
    pub maps: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
}

/// Sizes `|H[n]|` for `n = 1..=limit` of a finite group, from which the
/// group is determined up to isomorphism.
pub(crate) type TorsionProfile = Vec<u64>;

pub(crate) fn profile_of_invariants(invariants: &[i64], limit: u64) -> TorsionProfile {
    (1..=limit)
        .map(|n| invariants.iter().map(|&d| num_integer::gcd(n, d as u64)).product())
        .collect()
}

fn chains(opens: &[Vec<usize>], p: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..opens.len()).map(|x| vec![x]).collect();
    for _ in 0..p {
        let mut next = Vec::new();
        for c in &out {
            let last = *c.last().expect("nonempty");
            for &y in &opens[last] {
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

struct Cochains {
    chains: Vec<Vec<usize>>,
    /// One modulus per coordinate.
    moduli: Vec<i64>,
    offsets: Vec<usize>,
}

impl RawSheaf {
    fn cochains(&self, p: usize) -> Cochains {
        let chains = chains(&self.opens, p);
        let mut moduli = Vec::new();
        let mut offsets = Vec::new();
        for c in &chains {
            offsets.push(moduli.len());
            moduli.extend(&self.moduli[*c.last().expect("nonempty")]);
        }
        Cochains { chains, moduli, offsets }
    }

    fn apply(&self, x: usize, y: usize, v: &[i64]) -> Vec<i64> {
        if x == y {
            return v.to_vec();
        }
        let m = &self.maps[&(x, y)];
        m.iter()
            .zip(&self.moduli[y])
            .map(|(row, &d)| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(d))
            .collect()
    }

    /// `(dc)(x₀…x_{p+1}) = Σ_{i≤p} (−1)^i c(…x̂_i…) + (−1)^{p+1} res c(x₀…x_p)`.
    fn differential(&self, p: usize, src: &Cochains, dst: &Cochains, c: &[i64]) -> Vec<i64> {
        let index: BTreeMap<&Vec<usize>, usize> = src.chains.iter().enumerate().map(|(i, ch)| (ch, i)).collect();
        let mut out = vec![0i64; dst.moduli.len()];
        for (k, sigma) in dst.chains.iter().enumerate() {
            let off = dst.offsets[k];
            let last = sigma[p + 1];
            let n = self.moduli[last].len();
            for i in 0..=p + 1 {
                let mut face = sigma.clone();
                face.remove(i);
                let j = index[&face];
                let block = &c[src.offsets[j]..src.offsets[j] + self.moduli[*face.last().expect("nonempty")].len()];
                let value = if i == p + 1 { self.apply(sigma[p], last, block) } else { block.to_vec() };
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for t in 0..n {
                    out[off + t] += sign * value[t];
                }
            }
        }
        for (v, &d) in out.iter_mut().zip(&dst.moduli) {
            *v = v.rem_euclid(d);
        }
        out
    }

    /// `|H^p[n]|` for `n ≤ limit` by enumerating all cochains in degrees
    /// `p − 1`, `p`; `None` when more than `max_elements` cochains would be needed.
    pub(crate) fn profile(&self, p: usize, limit: u64, max_elements: usize) -> Option<TorsionProfile> {
        let cur = self.cochains(p);
        let next = self.cochains(p + 1);
        let size = |c: &Cochains| c.moduli.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        let n_cur = size(&cur)?;
        if n_cur > max_elements {
            return None;
        }
        let boundaries: HashSet<Vec<i64>> = if p == 0 {
            HashSet::from([vec![0; cur.moduli.len()]])
        } else {
            let prev = self.cochains(p - 1);
            if size(&prev)? > max_elements {
                return None;
            }
            all_vectors(&prev.moduli).map(|c| self.differential(p - 1, &prev, &cur, &c)).collect()
        };
        let cycles: Vec<Vec<i64>> = all_vectors(&cur.moduli)
            .filter(|c| self.differential(p, &cur, &next, c).iter().all(|&v| v == 0))
            .collect();
        let b = boundaries.len() as u64;
        Some(
            (1..=limit)
                .map(|n| {
                    let hits = cycles
                        .iter()
                        .filter(|z| {
                            let nz: Vec<i64> =
                                z.iter().zip(&cur.moduli).map(|(v, &d)| (v * n as i64).rem_euclid(d)).collect();
                            boundaries.contains(&nz)
                        })
                        .count() as u64;
                    hits / b
                })
                .collect(),
        )
    }

    /// The prime `q` when every stalk is an `𝔽_q`-vector space.
    pub(crate) fn common_prime(&self) -> Option<i64> {
        let mut found = None;
        for &d in self.moduli.iter().flatten().filter(|&&d| d != 1) {
            if found.is_some_and(|q| q != d) || !(2..d).take_while(|k| k * k <= d).all(|k| d % k != 0) {
                return None;
            }
            found = Some(d);
        }
        found
    }

    /// `dim_{𝔽_q} Hᵖ` by row reduction of the differentials over `𝔽_q`.
    pub(crate) fn dimension_mod_prime(&self, p: usize, q: i64) -> usize {
        let cur = self.cochains(p);
        let kernel = cur.moduli.iter().filter(|&&d| d == q).count() - rank_mod(&self.differential_matrix(p, q), q);
        let boundaries = if p == 0 { 0 } else { rank_mod(&self.differential_matrix(p - 1, q), q) };
        kernel - boundaries
    }

    /// Columns are images of the `𝔽_q` basis vectors of `Cᵖ`.
    fn differential_matrix(&self, p: usize, q: i64) -> Vec<Vec<i64>> {
        let src = self.cochains(p);
        let dst = self.cochains(p + 1);
        (0..src.moduli.len())
            .filter(|&i| src.moduli[i] == q)
            .map(|i| {
                let mut e = vec![0; src.moduli.len()];
                e[i] = 1;
                self.differential(p, &src, &dst, &e)
                    .into_iter()
                    .zip(&dst.moduli)
                    .filter(|(_, &d)| d == q)
                    .map(|(v, _)| v)
                    .collect()
            })
            .collect()
    }
}

fn rank_mod(columns: &[Vec<i64>], q: i64) -> usize {
    let mut rows: Vec<Vec<i64>> = columns.iter().map(|c| c.iter().map(|v| v.rem_euclid(q)).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = (1..q).find(|k| k * rows[rank][col] % q == 1).expect("q is prime");
        let pivot_row: Vec<i64> = rows[rank].iter().map(|v| v * inv % q).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(q);
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn all_vectors(moduli: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: usize = moduli.iter().map(|&d| d as usize).product();
    (0..total).map(move |mut k| {
        moduli
            .iter()
            .map(|&d| {
                let v = (k % d as usize) as i64;
                k /= d as usize;
                v
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_mod_two() {
        // units ⊗ ℤ/2 on the ℙ¹ poset: H¹ = ℤ/2
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), vec![vec![]]);
        maps.insert((2, 0), vec![vec![]]);
        let s = RawSheaf { opens: vec![vec![0], vec![0, 1], vec![0, 2]], moduli: vec![vec![2], vec![], vec![]], maps };
        assert_eq!(s.profile(1, 4, 1000).unwrap(), profile_of_invariants(&[2], 4));
        assert_eq!(s.profile(0, 4, 1000).unwrap(), profile_of_invariants(&[], 4));
        assert_eq!(s.common_prime(), Some(2));
        assert_eq!(s.dimension_mod_prime(1, 2), 1);
        assert_eq!(s.dimension_mod_prime(0, 2), 0);
    }
}
