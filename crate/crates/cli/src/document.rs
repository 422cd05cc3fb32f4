//! Input documents: parsing, validation and serialization.

use std::collections::BTreeMap;

use mscheme::monoid::PcMonoid;
use mscheme::scheme::{from_fan, glue, mspec_scheme, Fan, Identification, MonoidScheme};
use mscheme::{AffineMonoid, AmbientGroup, GroupElement};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const FORMAT: u64 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AmbientSpec {
    rank: usize,
    #[serde(default)]
    torsion: Vec<i64>,
}

/// A group element: a flat integer array, a `{free, torsion}` pair, or a
/// monomial in the generator names such as `"x^2y"` or `"y²"`.
#[derive(Deserialize, Clone)]
#[serde(untagged)]
pub enum ElementSpec {
    Flat(Vec<i64>),
    Split {
        free: Vec<i64>,
        #[serde(default)]
        torsion: Vec<i64>,
    },
    Named(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorsSpec {
    List(Vec<ElementSpec>),
    Named(BTreeMap<String, ElementSpec>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidDoc {
    #[serde(default)]
    format: Option<u64>,
    #[serde(default)]
    kind: Option<String>,
    ambient: AmbientSpec,
    generators: GeneratorsSpec,
    #[serde(default)]
    ideal: Vec<ElementSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDoc {
    format: u64,
    kind: String,
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingSpec {
    charts: [usize; 2],
    #[serde(default)]
    invert: Option<Vec<ElementSpec>>,
    #[serde(default)]
    points: Option<Vec<[usize; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScriptDoc {
    format: u64,
    kind: String,
    charts: Vec<MonoidDoc>,
    #[serde(default)]
    gluing: Vec<GluingSpec>,
}

/// A monoid `A/I` with the generator names used to read elements.
#[derive(Clone, Debug)]
pub struct MonoidInput {
    pub cancellative: AffineMonoid,
    pub ideal: Vec<GroupElement>,
    pub names: Vec<(String, GroupElement)>,
}

impl MonoidInput {
    pub fn pc(&self) -> Result<PcMonoid, CliError> {
        Ok(PcMonoid::new(&self.cancellative, &self.ideal)?)
    }

    pub fn element(&self, spec: &ElementSpec) -> Result<GroupElement, CliError> {
        resolve(self.cancellative.ambient(), &self.names, spec)
    }

    pub fn elements(&self, text: &str) -> Result<Vec<GroupElement>, CliError> {
        let specs: Vec<ElementSpec> =
            serde_json::from_str(text).map_err(|e| CliError::Schema(format!("element list: {e}")))?;
        specs.iter().map(|s| self.element(s)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Parsed {
    Monoid(MonoidInput),
    Fan(Fan),
    Scheme(MonoidScheme),
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Monoid(_) => "monoid",
            Parsed::Fan(_) => "fan",
            Parsed::Scheme(_) => "scheme-build-script",
        }
    }

    pub fn to_scheme(&self) -> Result<MonoidScheme, CliError> {
        Ok(match self {
            Parsed::Monoid(m) => mspec_scheme(&m.pc()?)?,
            Parsed::Fan(f) => from_fan(f)?,
            Parsed::Scheme(x) => x.clone(),
        })
    }
}

pub fn parse(text: &str) -> Result<Parsed, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    match value.get("format") {
        Some(Value::Number(n)) if n.as_u64() == Some(FORMAT) => {}
        Some(other) => return Err(CliError::Schema(format!("unsupported format {other}; expected {FORMAT}"))),
        None => return Err(CliError::Schema("missing \"format\" field".into())),
    }
    let kind = value.get("kind").and_then(Value::as_str).ok_or_else(|| CliError::Schema("missing \"kind\" field".into()))?;
    let schema = |e: serde_json::Error| CliError::Schema(format!("{kind} document: {e}"));
    match kind {
        "monoid" => Ok(Parsed::Monoid(build_monoid(&serde_json::from_str(text).map_err(schema)?)?)),
        "fan" => {
            let doc: FanDoc = serde_json::from_str(text).map_err(schema)?;
            debug_assert_eq!((doc.format, doc.kind.as_str()), (FORMAT, "fan"));
            Ok(Parsed::Fan(build_fan(&doc)?))
        }
        "scheme-build-script" => {
            let doc: ScriptDoc = serde_json::from_str(text).map_err(schema)?;
            debug_assert_eq!((doc.format, doc.kind.as_str()), (FORMAT, "scheme-build-script"));
            Ok(Parsed::Scheme(build_script(&doc)?))
        }
        other => Err(CliError::Schema(format!("unknown kind {other:?}; expected monoid, fan or scheme-build-script"))),
    }
}

fn build_monoid(doc: &MonoidDoc) -> Result<MonoidInput, CliError> {
    if let Some(k) = &doc.kind {
        if k != "monoid" {
            return Err(CliError::Schema(format!("chart has kind {k:?}")));
        }
    }
    if doc.format.is_some_and(|f| f != FORMAT) {
        return Err(CliError::Schema("unsupported chart format".into()));
    }
    let ambient = AmbientGroup::new(doc.ambient.rank, &doc.ambient.torsion)?;
    let (names, gens) = match &doc.generators {
        GeneratorsSpec::List(list) => {
            let gens = list.iter().map(|s| resolve(&ambient, &[], s)).collect::<Result<Vec<_>, _>>()?;
            (default_names(&gens), gens)
        }
        GeneratorsSpec::Named(map) => {
            let mut named = Vec::new();
            for (name, spec) in map {
                if !is_name(name) {
                    return Err(CliError::Schema(format!("generator name {name:?} must be letters followed by digits")));
                }
                named.push((name.clone(), resolve(&ambient, &[], spec)?));
            }
            let gens = named.iter().map(|(_, g)| g.clone()).collect();
            (named, gens)
        }
    };
    let cancellative = AffineMonoid::new(&ambient, &gens)?;
    let ideal = doc.ideal.iter().map(|s| resolve(&ambient, &names, s)).collect::<Result<Vec<_>, _>>()?;
    let input = MonoidInput { cancellative, ideal, names };
    input.pc()?;
    Ok(input)
}

fn default_names(gens: &[GroupElement]) -> Vec<(String, GroupElement)> {
    let letters = ["x", "y", "z"];
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let name = if gens.len() <= letters.len() { letters[i].to_string() } else { format!("x{}", i + 1) };
            (name, g.clone())
        })
        .collect()
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.trim_start_matches(|c: char| c.is_ascii_alphabetic()).chars().all(|c| c.is_ascii_digit())
}

fn resolve(ambient: &AmbientGroup, names: &[(String, GroupElement)], spec: &ElementSpec) -> Result<GroupElement, CliError> {
    let (r, t) = (ambient.rank(), ambient.torsion().len());
    let g = match spec {
        ElementSpec::Flat(v) if v.len() == r + t => ambient.from_flat(v),
        ElementSpec::Flat(v) if v.len() == r => GroupElement::new(v, &vec![0; t]),
        ElementSpec::Flat(v) => {
            return Err(CliError::Schema(format!("element {v:?} has {} entries; expected {r} or {}", v.len(), r + t)))
        }
        ElementSpec::Split { free, torsion } => {
            let torsion = if torsion.is_empty() { vec![0; t] } else { torsion.clone() };
            GroupElement::new(free, &torsion)
        }
        ElementSpec::Named(s) => monomial(ambient, names, s)?,
    };
    ambient.check(&g)?;
    Ok(ambient.reduce(g))
}

/// One element given as JSON text, read in `ambient` with optional names.
pub fn read_element(ambient: &AmbientGroup, names: &[(String, GroupElement)], text: &str) -> Result<GroupElement, CliError> {
    let spec: ElementSpec = serde_json::from_str(text).map_err(|e| CliError::Schema(format!("element: {e}")))?;
    resolve(ambient, names, &spec)
}

fn superscript(c: char) -> Option<char> {
    let i = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c)?;
    char::from_digit(i as u32, 10)
}

fn subscript(c: char) -> Option<char> {
    let i = "₀₁₂₃₄₅₆₇₈₉".chars().position(|d| d == c)?;
    char::from_digit(i as u32, 10)
}

/// Reads a product of named generators with integer exponents.
fn monomial(ambient: &AmbientGroup, names: &[(String, GroupElement)], text: &str) -> Result<GroupElement, CliError> {
    let normalized: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').map(|c| subscript(c).unwrap_or(c)).collect();
    let mut total = ambient.zero();
    if normalized == "1" {
        return Ok(total);
    }
    let chars: Vec<char> = normalized.chars().collect();
    let mut i = 0;
    let bad = || CliError::Schema(format!("cannot read element {text:?} from the generator names"));
    while i < chars.len() {
        let rest: String = chars[i..].iter().collect();
        let (name, g) = names
            .iter()
            .filter(|(n, _)| rest.starts_with(n.as_str()))
            .max_by_key(|(n, _)| n.len())
            .ok_or_else(bad)?;
        i += name.chars().count();
        let mut exponent = String::new();
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            if i < chars.len() && chars[i] == '-' {
                exponent.push('-');
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                exponent.push(chars[i]);
                i += 1;
            }
        } else {
            if i < chars.len() && chars[i] == '⁻' {
                exponent.push('-');
                i += 1;
            }
            while i < chars.len() {
                match superscript(chars[i]) {
                    Some(d) => exponent.push(d),
                    None => break,
                }
                i += 1;
            }
        }
        let k: i64 = if exponent.is_empty() { 1 } else { exponent.parse().map_err(|_| bad())? };
        total = ambient.add(&total, &ambient.scale(k, g));
    }
    Ok(total)
}

fn build_fan(doc: &FanDoc) -> Result<Fan, CliError> {
    let fan = Fan::new(doc.dim, &doc.rays, &doc.cones)?;
    let listed: std::collections::BTreeSet<std::collections::BTreeSet<usize>> =
        doc.cones.iter().map(|c| c.iter().copied().collect()).collect();
    if let Some(missing) = fan.cones().iter().find(|c| !listed.contains(*c)) {
        return Err(mscheme::Error::InvalidFan(format!(
            "cones are not closed under faces: {:?} is missing",
            missing.iter().collect::<Vec<_>>()
        ))
        .into());
    }
    Ok(fan)
}

fn build_script(doc: &ScriptDoc) -> Result<MonoidScheme, CliError> {
    let charts = doc.charts.iter().map(build_monoid).collect::<Result<Vec<_>, _>>()?;
    let pieces = charts.iter().map(|c| Ok(mspec_scheme(&c.pc()?)?)).collect::<Result<Vec<_>, CliError>>()?;
    let mut ids = Vec::new();
    for g in &doc.gluing {
        let [i, j] = g.charts;
        if i >= pieces.len() || j >= pieces.len() || i == j {
            return Err(CliError::Schema(format!("gluing refers to charts {i} and {j}")));
        }
        match (&g.invert, &g.points) {
            (Some(elems), None) => {
                let elems = elems.iter().map(|s| charts[i].element(s)).collect::<Result<Vec<_>, _>>()?;
                let local = charts[i].cancellative.invert(&elems)?;
                let p = find_point(&pieces[i], &local)?;
                for q in pieces[i].open_of(p) {
                    let stalk = pieces[i].stalk(q).cancellative().clone();
                    let other = find_point(&pieces[j], &stalk)?;
                    ids.push(Identification::identity((i, q), (j, other)));
                }
            }
            (None, Some(points)) => {
                ids.extend(points.iter().map(|&[p, q]| Identification::identity((i, p), (j, q))));
            }
            _ => return Err(CliError::Schema("each gluing needs exactly one of \"invert\" or \"points\"".into())),
        }
    }
    Ok(glue(&pieces, &ids)?)
}

fn find_point(x: &MonoidScheme, stalk: &AffineMonoid) -> Result<usize, CliError> {
    (0..x.len())
        .find(|&p| x.stalk(p).cancellative().same_as(stalk))
        .ok_or_else(|| mscheme::Error::Gluing(format!("no point of the chart has stalk {stalk}")).into())
}

pub fn element_value(g: &GroupElement) -> Value {
    if g.torsion.is_empty() {
        json!(g.free)
    } else {
        json!({ "free": g.free, "torsion": g.torsion })
    }
}

pub fn elements_value(gs: &[GroupElement]) -> Value {
    Value::Array(gs.iter().map(element_value).collect())
}

fn monoid_body(c: &AffineMonoid, ideal: &[GroupElement]) -> serde_json::Map<String, Value> {
    let mut body = serde_json::Map::new();
    let amb = c.ambient();
    body.insert("ambient".into(), json!({ "rank": amb.rank(), "torsion": amb.torsion() }));
    body.insert("generators".into(), elements_value(c.generators()));
    if !ideal.is_empty() {
        body.insert("ideal".into(), elements_value(ideal));
    }
    body
}

pub fn monoid_document(c: &AffineMonoid, ideal: &[GroupElement]) -> Value {
    let mut body = monoid_body(c, ideal);
    body.insert("format".into(), json!(FORMAT));
    body.insert("kind".into(), json!("monoid"));
    Value::Object(body)
}

pub fn pc_document(a: &PcMonoid) -> Value {
    monoid_document(a.cancellative(), a.ideal().generators())
}

pub fn fan_document(f: &Fan) -> Value {
    let cones: Vec<Vec<usize>> = f.cones().iter().map(|c| c.iter().copied().collect()).collect();
    json!({ "format": FORMAT, "kind": "fan", "dim": f.rank(), "rays": f.rays(), "cones": cones })
}

/// A build script whose charts are the stalks at the closed points, glued
/// point by point. Needs identity generization maps.
pub fn scheme_document(x: &MonoidScheme) -> Result<Value, CliError> {
    for p in 0..x.len() {
        if x.generizations(p).iter().any(|g| !g.map.is_identity()) {
            return Err(CliError::Unsupported("schemes with non-identity generization maps cannot be serialized".into()));
        }
    }
    let closed = x.closed_points();
    let charts: Vec<MonoidScheme> = closed.iter().map(|&c| mspec_scheme(x.stalk(c))).collect::<Result<_, _>>()?;
    let index_in = |k: usize, z: usize| -> Result<usize, CliError> {
        (0..charts[k].len())
            .find(|&q| charts[k].stalk(q).same_as(x.stalk(z)))
            .ok_or_else(|| CliError::Unsupported(format!("point {z} is not found in its chart")))
    };
    let mut gluing = Vec::new();
    for a in 0..closed.len() {
        for b in a + 1..closed.len() {
            let ub = x.open_of(closed[b]);
            let common: Vec<usize> = x.open_of(closed[a]).into_iter().filter(|z| ub.contains(z)).collect();
            if common.is_empty() {
                continue;
            }
            let points = common.iter().map(|&z| Ok([index_in(a, z)?, index_in(b, z)?])).collect::<Result<Vec<_>, CliError>>()?;
            gluing.push(json!({ "charts": [a, b], "points": points }));
        }
    }
    let charts: Vec<Value> =
        closed.iter().map(|&c| Value::Object(monoid_body(x.stalk(c).cancellative(), x.stalk(c).ideal().generators()))).collect();
    Ok(json!({ "format": FORMAT, "kind": "scheme-build-script", "charts": charts, "gluing": gluing }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_sugar() {
        let doc = r#"{"format":1,"kind":"monoid","ambient":{"rank":2},"generators":[[1,0],[1,2],[1,1]],"ideal":["x","z^2","y²"]}"#;
        let Parsed::Monoid(m) = parse(doc).unwrap() else { panic!("expected a monoid") };
        assert_eq!(m.ideal, vec![GroupElement::free(&[1, 0]), GroupElement::free(&[2, 2]), GroupElement::free(&[2, 4])]);
        assert_eq!(m.elements(r#"["xz", [3,1], "1"]"#).unwrap()[0], GroupElement::free(&[2, 1]));
        assert!(m.elements(r#"["w"]"#).is_err());
    }

    #[test]
    fn subscripted_names() {
        let doc = r#"{"format":1,"kind":"monoid","ambient":{"rank":2},"generators":{"x1":[1,0],"x2":[0,1]},"ideal":["x₁x₂"]}"#;
        let Parsed::Monoid(m) = parse(doc).unwrap() else { panic!("expected a monoid") };
        assert_eq!(m.ideal, vec![GroupElement::free(&[1, 1])]);
    }

    #[test]
    fn schema_errors_carry_positions() {
        let err = parse("{\"format\":1,\"kind\":\"fan\",\n\"dim\":1,\"rays\":[[1]],\"cones\":[[]],\"extra\":0}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(matches!(parse(r#"{"format":2,"kind":"fan"}"#), Err(CliError::Schema(_))));
    }

    #[test]
    fn fans_must_list_all_faces() {
        let err = parse(r#"{"format":1,"kind":"fan","dim":1,"rays":[[1],[-1]],"cones":[[0],[1]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Core(mscheme::Error::InvalidFan(_))));
    }
}
