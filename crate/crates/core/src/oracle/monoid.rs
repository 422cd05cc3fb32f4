use std::cell::{Cell, RefCell};
use std::collections::{BTreeSet, VecDeque};

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use super::EnumerationBudget;

/// A commutative monoid given by generators in `ℤ^rank ⊕ ℤ/m₁ ⊕ …`,
/// stored as flat integer vectors (free coordinates first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMonoid {
    pub rank: usize,
    pub torsion: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

impl RawMonoid {
    pub fn free(rank: usize, generators: &[Vec<i64>]) -> Self {
        RawMonoid { rank, torsion: Vec::new(), generators: generators.to_vec() }
    }

    /// `ℕ^d` with its standard basis.
    pub fn free_commutative(d: usize) -> Self {
        let gens = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = 1;
                v
            })
            .collect::<Vec<_>>();
        Self::free(d, &gens)
    }

    pub fn width(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (k, m) in self.torsion.iter().enumerate() {
            v[self.rank + k] = v[self.rank + k].rem_euclid(*m);
        }
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().map(|x| k * x).collect())
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.width()]
    }

    /// A functional with entries in `[-2, 2]` that is nonnegative on every
    /// generator and positive on as many as possible (ties: smallest `ℓ¹`
    /// norm, then lexicographically smallest).
    pub fn default_grading(&self) -> Vec<i64> {
        let r = self.rank;
        let mut best: Option<(usize, i64, Vec<i64>)> = None;
        let mut w = vec![-2i64; r];
        loop {
            let degs: Vec<i64> = self.generators.iter().map(|g| dot(&w, g)).collect();
            if degs.iter().all(|&d| d >= 0) {
                let pos = degs.iter().filter(|&&d| d > 0).count();
                let norm: i64 = w.iter().map(|x| x.abs()).sum();
                let better = match &best {
                    None => true,
                    Some((bp, bn, bw)) => pos > *bp || (pos == *bp && (norm < *bn || (norm == *bn && w < *bw))),
                };
                if better {
                    best = Some((pos, norm, w.clone()));
                }
            }
            // odometer over [-2, 2]^r
            let mut i = 0;
            while i < r {
                if w[i] < 2 {
                    w[i] += 1;
                    break;
                }
                w[i] = -2;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        best.map(|b| b.2).unwrap_or_else(|| vec![0; r])
    }
}

pub(crate) fn dot(w: &[i64], v: &[i64]) -> i64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Membership and enumeration for one monoid under a fixed budget. Any
/// answer that depended on a truncated search sets `truncated`.
pub struct MonoidOracle<'a> {
    pub monoid: &'a RawMonoid,
    pub grading: Vec<i64>,
    pub budget: EnumerationBudget,
    positive: Vec<Vec<i64>>,
    radius: i64,
    /// Sign (+1 or −1) of every free coordinate on which all generators agree in sign.
    signs: Vec<i64>,
    degree_zero: HashSet<Vec<i64>>,
    /// The degree-zero closure reached the edge of the box, so only the
    /// inner half of the box is trusted. Otherwise the closure is exact.
    degree_zero_open: bool,
    memo: RefCell<HashMap<Vec<i64>, bool>>,
    truncated: Cell<bool>,
}

impl<'a> MonoidOracle<'a> {
    pub fn new(monoid: &'a RawMonoid, budget: &EnumerationBudget) -> Self {
        let grading = budget.grading.clone().unwrap_or_else(|| monoid.default_grading());
        let positive: Vec<Vec<i64>> =
            monoid.generators.iter().filter(|g| dot(&grading, g) > 0).cloned().collect();
        let zero_gens: Vec<Vec<i64>> =
            monoid.generators.iter().filter(|g| dot(&grading, g) == 0).cloned().collect();
        let scale = monoid.generators.iter().flat_map(|g| g[..monoid.rank].iter().map(|x| x.abs())).max().unwrap_or(1);
        let signs = (0..monoid.rank)
            .map(|i| {
                if monoid.generators.iter().all(|g| g[i] >= 0) {
                    1
                } else if monoid.generators.iter().all(|g| g[i] <= 0) {
                    -1
                } else {
                    0
                }
            })
            .collect();
        let oracle = MonoidOracle {
            monoid,
            grading,
            budget: budget.clone(),
            positive,
            radius: budget.box_radius() * scale.max(1),
            signs,
            degree_zero: HashSet::default(),
            degree_zero_open: false,
            memo: RefCell::new(HashMap::default()),
            truncated: Cell::new(false),
        };
        let degree_zero = oracle.closure(&zero_gens, |_| true);
        let degree_zero_open = oracle.truncated.replace(false);
        MonoidOracle { degree_zero, degree_zero_open, ..oracle }
    }

    pub fn degree(&self, v: &[i64]) -> i64 {
        dot(&self.grading, v)
    }

    pub fn truncated(&self) -> bool {
        self.truncated.get()
    }

    fn in_box(&self, v: &[i64]) -> bool {
        v[..self.monoid.rank].iter().all(|x| x.abs() <= self.radius)
    }

    fn in_inner_box(&self, v: &[i64]) -> bool {
        v[..self.monoid.rank].iter().all(|x| 2 * x.abs() <= self.radius)
    }

    /// Breadth-first closure of `{0}` under adding `gens`, restricted to
    /// the box and to `keep`.
    fn closure(&self, gens: &[Vec<i64>], keep: impl Fn(&[i64]) -> bool) -> HashSet<Vec<i64>> {
        let start = self.monoid.zero();
        let mut seen: HashSet<Vec<i64>> = HashSet::from_iter([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in gens {
                let w = self.monoid.add(&v, g);
                if seen.contains(&w) || !keep(&w) {
                    continue;
                }
                if !self.in_box(&w) || seen.len() >= self.budget.max_elements {
                    self.truncated.set(true);
                    continue;
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
        seen
    }

    /// Is `v` a sum of generators?
    pub fn contains(&self, v: &[i64]) -> bool {
        let v = self.monoid.reduce(v.to_vec());
        self.contains_reduced(&v)
    }

    fn contains_reduced(&self, v: &[i64]) -> bool {
        let d = self.degree(v);
        if d < 0 || v.iter().zip(&self.signs).any(|(x, s)| x * s < 0) {
            return false;
        }
        if d == 0 {
            let found = self.degree_zero.contains(v);
            if !found && self.degree_zero_open && !self.in_inner_box(v) {
                self.truncated.set(true);
            }
            return found;
        }
        if let Some(&b) = self.memo.borrow().get(v) {
            return b;
        }
        let found = self.positive.iter().any(|g| {
            let w = self.monoid.sub(v, g);
            self.contains_reduced(&w)
        });
        self.memo.borrow_mut().insert(v.to_vec(), found);
        found
    }

    /// All elements of degree at most `max_degree`, sorted.
    pub fn elements_up_to(&self, max_degree: i64) -> Vec<Vec<i64>> {
        let set = self.closure(&self.monoid.generators, |w| self.degree(w) <= max_degree);
        let sorted: BTreeSet<Vec<i64>> = set.into_iter().collect();
        sorted.into_iter().collect()
    }

    /// Elements of the group generated by the monoid whose free coordinates
    /// lie within `radius`, found by walking along `±generators` inside a
    /// box twice as large.
    pub fn group_elements(&self, radius: i64) -> Vec<Vec<i64>> {
        let mut steps = self.monoid.generators.clone();
        steps.extend(self.monoid.generators.iter().map(|g| self.monoid.scale(-1, g)));
        let rank = self.monoid.rank;
        let start = self.monoid.zero();
        let mut seen: HashSet<Vec<i64>> = HashSet::from_iter([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in &steps {
                let w = self.monoid.add(&v, g);
                if seen.contains(&w) || w[..rank].iter().any(|x| x.abs() > 2 * radius) {
                    continue;
                }
                if seen.len() >= self.budget.max_elements {
                    self.truncated.set(true);
                    continue;
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
        let sorted: BTreeSet<Vec<i64>> = seen.into_iter().filter(|v| v[..rank].iter().all(|x| x.abs() <= radius)).collect();
        sorted.into_iter().collect()
    }

    /// Is `v` in the ideal generated by `gens`?
    pub fn in_ideal(&self, gens: &[Vec<i64>], v: &[i64]) -> bool {
        gens.iter().any(|g| self.contains(&self.monoid.sub(v, g)))
    }

    /// Is some positive multiple `k·v` (with `k·deg v ≤ limit`, `k ≤ 64`) in the ideal?
    pub fn nilpotent_mod(&self, gens: &[Vec<i64>], v: &[i64], limit: i64) -> bool {
        self.nilpotent_by(v, limit, |w| self.in_ideal(gens, w))
    }

    /// Some multiple `k·v` with `k ≤ 64` and degree at most `limit` satisfies `in_q`.
    pub(crate) fn nilpotent_by(&self, v: &[i64], limit: i64, in_q: impl Fn(&[i64]) -> bool) -> bool {
        let d = self.degree(v);
        (1..=64).take_while(|k| d <= 0 || k * d <= limit).any(|k| in_q(&self.monoid.scale(k, v)))
    }

    /// Degree up to which multiples are searched when testing nilpotence
    /// modulo an ideal with generators `gens` inside a window of degree `d`.
    /// For free monoids every nilpotent element of degree at most `d` has
    /// a multiple in the ideal below this bound.
    pub fn nilpotence_limit(&self, gens: &[Vec<i64>], d: i64) -> i64 {
        let top = gens.iter().map(|g| self.degree(g)).max().unwrap_or(0).max(2);
        d.max(1) * top
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_monoid() {
        let m = RawMonoid::free(1, &[vec![2], vec![3]]);
        let o = MonoidOracle::new(&m, &EnumerationBudget::new(7));
        let elems: Vec<i64> = o.elements_up_to(7).into_iter().map(|v| v[0]).collect();
        assert_eq!(elems, vec![0, 2, 3, 4, 5, 6, 7]);
        assert!(!o.contains(&[1]));
        assert!(o.contains(&[11]));
    }

    #[test]
    fn free_plane() {
        let m = RawMonoid::free_commutative(2);
        let o = MonoidOracle::new(&m, &EnumerationBudget::new(2));
        assert_eq!(o.elements_up_to(2).len(), 6);
    }

    #[test]
    fn units_and_torsion() {
        let m = RawMonoid { rank: 1, torsion: vec![2], generators: vec![vec![1, 0], vec![1, 1]] };
        let o = MonoidOracle::new(&m, &EnumerationBudget::new(4));
        assert!(o.contains(&[2, 1]));
        assert!(!o.contains(&[0, 1]));
        let laurent = RawMonoid::free(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        let o = MonoidOracle::new(&laurent, &EnumerationBudget::new(4));
        assert_eq!(o.grading, vec![0, 1]);
        assert!(o.contains(&[-3, 2]));
        assert!(!o.contains(&[0, -1]));
    }
}
