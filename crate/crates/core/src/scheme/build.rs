use std::collections::{BTreeMap, VecDeque};

use super::{Generization, MonoidScheme};
use crate::error::{Error, Result};
use crate::ideal::mspec;
use crate::monoid::{GroupElement, GroupHom, PcMonoid};

/// `MSpec(A)`: one point per prime, stalks the localizations.
pub fn mspec_scheme(a: &PcMonoid) -> Result<MonoidScheme> {
    let spec = mspec(a);
    let faces: Vec<_> = spec.points.iter().map(|p| p.face.clone()).collect();
    let stalks: Vec<PcMonoid> = faces.iter().map(|f| a.localize(f)).collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for (x, fx) in faces.iter().enumerate() {
        let c = stalks[x].cancellative();
        let mut list = Vec::new();
        for (y, fy) in faces.iter().enumerate() {
            if fx.is_subface_of(fy) {
                let face = c.face(&fy.normals)?;
                list.push(Generization { target: y, face, map: GroupHom::identity(c.ambient()) });
            }
        }
        gens.push(list);
    }
    let labels = spec.points.iter().map(|p| prime_label(a, &p.face)).collect();
    MonoidScheme::from_parts(stalks, gens, labels)
}

fn prime_label(a: &PcMonoid, f: &crate::lattice::FaceDescriptor) -> String {
    let gens: Vec<String> = a
        .cancellative()
        .nonunit_generators()
        .iter()
        .filter(|g| !f.contains(&g.free))
        .map(|g| g.to_string())
        .collect();
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", gens.join(","))
    }
}

/// Identifies point `right` of one piece with point `left` of another.
/// `map` goes from the ambient of the right stalk to the ambient of the
/// left stalk; `None` means the identity (the ambients must agree).
#[derive(Clone, Debug)]
pub struct Identification {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub map: Option<GroupHom>,
}

impl Identification {
    pub fn identity(left: (usize, usize), right: (usize, usize)) -> Self {
        Identification { left, right, map: None }
    }
}

type Node = (usize, usize);

/// Glues schemes along identified points. The identified points of each
/// piece must form open subsets, identified compatibly; the result is
/// validated.
pub fn glue(pieces: &[MonoidScheme], idents: &[Identification]) -> Result<MonoidScheme> {
    let nodes: Vec<Node> = pieces.iter().enumerate().flat_map(|(p, x)| (0..x.len()).map(move |i| (p, i))).collect();
    let ambient = |n: Node| pieces[n.0].stalk(n.1).cancellative().ambient().clone();
    for id in idents {
        for n in [id.left, id.right] {
            if n.0 >= pieces.len() || n.1 >= pieces[n.0].len() {
                return Err(Error::Gluing(format!("no point {n:?}")));
            }
        }
    }
    // adjacency with maps: edge a -> b carries a map ambient(a) -> ambient(b)
    let mut adj: BTreeMap<Node, Vec<(Node, GroupHom)>> = BTreeMap::new();
    for id in idents {
        let fwd = match &id.map {
            Some(m) => m.clone(),
            None => {
                if ambient(id.left) != ambient(id.right) {
                    return Err(Error::Gluing(format!("{:?} and {:?} need an explicit map", id.left, id.right)));
                }
                GroupHom::identity(&ambient(id.left))
            }
        };
        if fwd.source != ambient(id.right) || fwd.target != ambient(id.left) {
            return Err(Error::Gluing(format!("map for {:?} ~ {:?} has the wrong ambients", id.left, id.right)));
        }
        let inv = fwd
            .inverse()
            .ok_or_else(|| Error::Gluing(format!("map for {:?} ~ {:?} is not invertible", id.left, id.right)))?;
        adj.entry(id.right).or_default().push((id.left, fwd));
        adj.entry(id.left).or_default().push((id.right, inv));
    }
    // classes, representatives and maps to the representative
    let mut class_of: BTreeMap<Node, usize> = BTreeMap::new();
    let mut to_rep: BTreeMap<Node, GroupHom> = BTreeMap::new();
    let mut reps: Vec<Node> = Vec::new();
    for &n in &nodes {
        if class_of.contains_key(&n) {
            continue;
        }
        let id = reps.len();
        reps.push(n);
        class_of.insert(n, id);
        to_rep.insert(n, GroupHom::identity(&ambient(n)));
        let mut queue = VecDeque::from([n]);
        while let Some(a) = queue.pop_front() {
            // psi_a : ambient(a) -> ambient(rep); for neighbour b with edge b -> a we need ambient(b) -> ambient(rep)
            let psi_a = to_rep[&a].clone();
            for (b, m_ab) in adj.get(&a).cloned().unwrap_or_default() {
                if class_of.contains_key(&b) {
                    continue;
                }
                // m_ab : ambient(a) -> ambient(b); invert to go b -> a
                let m_ba = m_ab.inverse().expect("identification maps are invertible");
                class_of.insert(b, id);
                to_rep.insert(b, m_ba.compose(&psi_a));
                queue.push_back(b);
            }
        }
    }
    // stalks must agree after transport
    for &n in &nodes {
        let rep = reps[class_of[&n]];
        let moved = pieces[n.0].stalk(n.1).transport(&to_rep[&n])?;
        if !moved.same_as(pieces[rep.0].stalk(rep.1)) {
            return Err(Error::Gluing(format!("stalks at {rep:?} and {n:?} differ")));
        }
    }
    let stalks: Vec<PcMonoid> = reps.iter().map(|r| pieces[r.0].stalk(r.1).clone()).collect();
    let mut gens = Vec::new();
    for (cls, &rep) in reps.iter().enumerate() {
        let mut chosen: Option<Vec<Generization>> = None;
        for &n in nodes.iter().filter(|n| class_of[*n] == cls) {
            let piece = &pieces[n.0];
            let psi = &to_rep[&n];
            let psi_inv = psi.inverse().expect("identification maps are invertible");
            let rep_c = stalks[cls].cancellative();
            let mut list = Vec::new();
            for g in piece.generizations(n.1) {
                let t = (n.0, g.target);
                let on_face: Vec<GroupElement> = piece
                    .stalk(n.1)
                    .cancellative()
                    .generators()
                    .iter()
                    .filter(|e| g.face.contains(&e.free))
                    .map(|e| psi.apply(e))
                    .collect();
                let face = rep_c.face_of_elements(&on_face);
                let map = psi_inv.compose(&g.map).compose(&to_rep[&t]);
                list.push(Generization { target: class_of[&t], face, map });
            }
            list.sort_by_key(|g| g.target);
            match &chosen {
                None => chosen = Some(list),
                Some(prev) => {
                    let a: Vec<usize> = prev.iter().map(|g| g.target).collect();
                    let b: Vec<usize> = list.iter().map(|g| g.target).collect();
                    if a != b {
                        return Err(Error::Gluing(format!(
                            "open neighbourhoods of {rep:?} and {n:?} do not match after gluing"
                        )));
                    }
                }
            }
        }
        gens.push(chosen.expect("every class has a member"));
    }
    let labels = reps.iter().map(|&(p, x)| format!("{p}:{}", pieces[p].label(x))).collect();
    MonoidScheme::from_parts(stalks, gens, labels).map_err(|e| Error::Gluing(e.to_string()))
}

/// `X × Y`: product poset, smash products of stalks.
pub fn product(x: &MonoidScheme, y: &MonoidScheme) -> Result<MonoidScheme> {
    let (nx, ny) = (x.len(), y.len());
    let mut stalks = Vec::new();
    let mut labels = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            stalks.push(x.stalk(i).smash(y.stalk(j)));
            labels.push(format!("({},{})", x.label(i), y.label(j)));
        }
    }
    let mut gens = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let s = &stalks[i * ny + j];
            let (ax, ay) = (x.stalk(i).cancellative().ambient(), y.stalk(j).cancellative().ambient());
            let mut list = Vec::new();
            for gx in x.generizations(i) {
                for gy in y.generizations(j) {
                    let mut normals: Vec<Vec<i64>> = gx
                        .face
                        .normals
                        .iter()
                        .map(|n| n.iter().copied().chain(std::iter::repeat_n(0, ay.rank())).collect())
                        .collect();
                    normals.extend(
                        gy.face.normals.iter().map(|n| std::iter::repeat_n(0, ax.rank()).chain(n.iter().copied()).collect()),
                    );
                    let face = s.cancellative().face(&normals)?;
                    list.push(Generization {
                        target: gx.target * ny + gy.target,
                        face,
                        map: gx.map.direct_sum(&gy.map),
                    });
                }
            }
            gens.push(list);
        }
    }
    MonoidScheme::from_parts(stalks, gens, labels)
}

/// `ℙⁿ`, built from its fan.
pub fn projective_space(n: usize) -> Result<MonoidScheme> {
    super::from_fan(&super::Fan::projective_space(n)?)
}
