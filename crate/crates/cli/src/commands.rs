use mscheme::bridge::{raw_element, raw_ideal, raw_monoid, raw_prime, verify_units_mod};
use mscheme::divisor::{
    cartier_group, class_group, div, mayer_vietoris, nor_comparison, picard_group, LongExactSequence,
};
use mscheme::ideal::{
    associated_primes, ideal_op, mspec, primary_decomposition, radical, DecompositionOptions, IdealOp, MonoidIdeal,
};
use mscheme::monoid::MonoidElement;
use mscheme::normalization::{normalization_scheme, normalize, seminormalize_pc};
use mscheme::oracle::{verify, Claim, EnumerationBudget, RawMonoid, Verdict};
use mscheme::scheme::MonoidScheme;
use mscheme::PresentedAbGroup;
use serde_json::{json, Value};

use crate::document::{element_value, elements_value, monoid_document, pc_document, read_element, MonoidInput, Parsed};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Mspec,
    IdealOp,
    Radical,
    PrimaryDecomp,
    Ass,
    Normalize,
    Seminormalize,
    NormalizationScheme,
    ClassGroup,
    Divisor,
    Picard,
    Cartier,
    NorCompare,
    MayerVietoris,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OpKind {
    Sum,
    Product,
    Intersection,
    Quotient,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub degree_bound: Option<i64>,
    pub verify: bool,
    /// For `ideal-op`.
    pub op: Option<OpKind>,
    /// Second ideal for `ideal-op`, as a JSON list of elements.
    pub with: Option<String>,
    /// Element for `divisor`, as JSON.
    pub element: Option<String>,
    pub generic_point: Option<usize>,
}

impl Options {
    fn budget(&self) -> EnumerationBudget {
        EnumerationBudget::new(self.degree_bound.unwrap_or(8))
    }
}

/// A report plus the oracle verdicts, when verification was requested.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    /// REFUTED beats INCONCLUSIVE beats CONFIRMED.
    pub fn overall(&self) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.is_refuted())
            .or_else(|| self.verdicts.iter().find(|v| !v.is_confirmed()))
            .or_else(|| self.verdicts.first())
    }

    /// The report with a `verification` entry when verdicts are present.
    pub fn full_report(&self) -> Value {
        let mut report = self.report.clone();
        if let (Some(overall), Value::Object(map)) = (self.overall(), &mut report) {
            let checks: Vec<String> = self.verdicts.iter().map(ToString::to_string).collect();
            map.insert("verification".into(), json!({ "verdict": overall.label(), "checks": checks }));
        }
        report
    }
}

pub fn group_value(g: &PresentedAbGroup) -> Value {
    json!({ "rank": g.rank, "invariant_factors": g.invariant_factors })
}

fn monoid_input<'a>(parsed: &'a Parsed, cmd: Command) -> Result<&'a MonoidInput, CliError> {
    match parsed {
        Parsed::Monoid(m) => Ok(m),
        other => Err(CliError::Unsupported(format!("{cmd:?} needs a monoid document, not a {} document", other.kind()))),
    }
}

fn ideal_of(m: &MonoidInput) -> Result<MonoidIdeal, CliError> {
    Ok(MonoidIdeal::new(&m.cancellative, &m.ideal)?)
}

fn options(opts: &Options) -> DecompositionOptions {
    DecompositionOptions { degree_bound: opts.degree_bound, ..Default::default() }
}

pub fn run(cmd: Command, parsed: &Parsed, opts: &Options) -> Result<Outcome, CliError> {
    let budget = opts.budget();
    let mut verdicts = Vec::new();
    let report = match cmd {
        Command::Mspec => {
            let m = monoid_input(parsed, cmd)?;
            let sp = mspec(&m.pc()?);
            let points: Vec<Value> = sp
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    json!({
                        "index": i,
                        "height": p.height,
                        "ideal": elements_value(p.as_ideal(&m.cancellative).generators()),
                        "face": p.face.normals,
                    })
                })
                .collect();
            let inclusions: Vec<[usize; 2]> = (0..sp.len())
                .flat_map(|a| (0..sp.len()).map(move |b| [a, b]))
                .filter(|&[a, b]| a != b && sp.le(a, b))
                .collect();
            json!({ "points": points, "inclusions": inclusions })
        }
        Command::IdealOp => {
            let m = monoid_input(parsed, cmd)?;
            let op = opts.op.ok_or_else(|| CliError::Schema("ideal-op needs --op".into()))?;
            let with = opts.with.as_deref().ok_or_else(|| CliError::Schema("ideal-op needs --with".into()))?;
            let i = ideal_of(m)?;
            let j = MonoidIdeal::new(&m.cancellative, &m.elements(with)?)?;
            let kind = match op {
                OpKind::Sum => IdealOp::Sum,
                OpKind::Product => IdealOp::Product,
                OpKind::Intersection => IdealOp::Intersection,
                OpKind::Quotient => IdealOp::Quotient,
            };
            let result = ideal_op(&i, &j, kind, opts.degree_bound)?;
            if opts.verify {
                let monoid = raw_monoid(&m.cancellative);
                let (ri, rj, rr) = (raw_ideal(&i), raw_ideal(&j), raw_ideal(&result.ideal));
                let claim = match op {
                    OpKind::Sum => Claim::IdealEquality { monoid, left: rr, right: ri.into_iter().chain(rj).collect() },
                    OpKind::Product => {
                        let products = ri.iter().flat_map(|a| rj.iter().map(|b| monoid.add(a, b))).collect();
                        Claim::IdealEquality { monoid, left: rr, right: products }
                    }
                    OpKind::Intersection => Claim::Intersection { monoid, ideals: vec![ri, rj], result: rr },
                    OpKind::Quotient => Claim::Quotient { monoid, ideal: ri, by: rj, result: rr },
                };
                verdicts.push(verify(&claim, &budget));
            }
            json!({ "ideal": elements_value(result.ideal.generators()), "exact": result.exact })
        }
        Command::Radical => {
            let m = monoid_input(parsed, cmd)?;
            let i = ideal_of(m)?;
            let r = radical(&i);
            if opts.verify {
                let claim = Claim::Radical { monoid: raw_monoid(&m.cancellative), ideal: raw_ideal(&i), radical: raw_ideal(&r) };
                verdicts.push(verify(&claim, &budget));
            }
            json!({ "radical": elements_value(r.generators()) })
        }
        Command::PrimaryDecomp | Command::Ass => {
            let m = monoid_input(parsed, cmd)?;
            let i = ideal_of(m)?;
            let comps = primary_decomposition(&i, &options(opts))?;
            if opts.verify {
                let monoid = raw_monoid(&m.cancellative);
                let components: Vec<_> = comps.iter().map(|c| raw_ideal(&c.ideal)).collect();
                let claim = Claim::PrimaryDecomposition { monoid: monoid.clone(), ideal: raw_ideal(&i), components };
                verdicts.push(verify(&claim, &budget));
                if cmd == Command::Ass {
                    let associated = comps.iter().map(|c| raw_prime(&m.cancellative, &c.radical)).collect();
                    verdicts.push(verify(&Claim::LocalZero { monoid, ideal: raw_ideal(&i), associated }, &budget));
                }
            }
            if cmd == Command::Ass {
                let primes = associated_primes(&i, &options(opts))?;
                let list: Vec<Value> = primes
                    .iter()
                    .map(|p| json!({ "ideal": elements_value(p.as_ideal(&m.cancellative).generators()), "height": p.height }))
                    .collect();
                json!({ "associated_primes": list })
            } else {
                let list: Vec<Value> = comps
                    .iter()
                    .map(|c| {
                        json!({
                            "ideal": elements_value(c.ideal.generators()),
                            "radical": elements_value(c.radical.as_ideal(&m.cancellative).generators()),
                            "height": c.radical.height,
                        })
                    })
                    .collect();
                json!({ "components": list })
            }
        }
        Command::Normalize => {
            let m = monoid_input(parsed, cmd)?;
            if !m.ideal.is_empty() {
                return Err(mscheme::Error::NotCancellative("normalize needs a cancellative monoid; try normalization-scheme".into()).into());
            }
            let n = normalize(&m.cancellative);
            if opts.verify {
                let basis = n.generators().iter().map(raw_element).collect();
                verdicts.push(verify(&Claim::HilbertBasis { monoid: raw_monoid(&m.cancellative), basis }, &budget));
            }
            monoid_document(&n, &[])
        }
        Command::Seminormalize => {
            let m = monoid_input(parsed, cmd)?;
            let s = seminormalize_pc(&m.pc()?, opts.degree_bound);
            if opts.verify {
                let generators = s.cancellative().generators().iter().map(raw_element).collect();
                verdicts.push(verify(&Claim::Seminormalization { monoid: raw_monoid(&m.cancellative), generators }, &budget));
            }
            pc_document(&s)
        }
        Command::NormalizationScheme => {
            let m = monoid_input(parsed, cmd)?;
            let ns = normalization_scheme(&m.pc()?)?;
            let tuples = ns.global_sections.generators();
            if opts.verify {
                let factors: Vec<RawMonoid> = ns.global_sections.factors.iter().map(raw_monoid).collect();
                let generators = tuples
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|e| match e {
                                MonoidElement::Zero => None,
                                MonoidElement::Elem(g) => Some(raw_element(g)),
                            })
                            .collect()
                    })
                    .collect();
                verdicts.push(verify(&Claim::PointedProduct { factors, generators }, &budget));
            }
            let components: Vec<Value> = ns
                .components
                .iter()
                .map(|c| json!({ "generic_point": c.generic_point, "monoid": monoid_document(&c.monoid, &[]) }))
                .collect();
            let sections: Vec<Value> = tuples
                .iter()
                .map(|t| {
                    Value::Array(
                        t.iter()
                            .map(|e| match e {
                                MonoidElement::Zero => Value::Null,
                                MonoidElement::Elem(g) => element_value(g),
                            })
                            .collect(),
                    )
                })
                .collect();
            json!({ "points": ns.scheme.len(), "components": components, "global_sections": sections })
        }
        Command::ClassGroup => group_value(&class_group(&parsed.to_scheme()?)?),
        Command::Divisor => {
            let x = parsed.to_scheme()?;
            let eta = match opts.generic_point {
                Some(p) => p,
                None => match x.generic_points()[..] {
                    [p] => p,
                    _ => return Err(mscheme::Error::Precondition("the scheme has several generic points; pass --generic-point".into()).into()),
                },
            };
            if eta >= x.len() {
                return Err(mscheme::Error::Precondition(format!("no point {eta}")).into());
            }
            let text = opts.element.as_deref().ok_or_else(|| CliError::Schema("divisor needs --element".into()))?;
            let names = match parsed {
                Parsed::Monoid(m) => m.names.clone(),
                _ => Vec::new(),
            };
            let a = read_element(x.stalk(eta).cancellative().ambient(), &names, text)?;
            let d = div(&x, eta, &a)?;
            let terms: Vec<Value> =
                d.terms().map(|(p, c)| json!({ "point": p, "label": x.label(p), "coefficient": c })).collect();
            json!({ "divisor": terms })
        }
        Command::Picard => {
            let x = parsed.to_scheme()?;
            verdicts.extend(units_checks(&x, opts)?);
            group_value(&picard_group(&x)?)
        }
        Command::Cartier => {
            let x = parsed.to_scheme()?;
            verdicts.extend(units_checks(&x, opts)?);
            let c = cartier_group(&x)?;
            json!({
                "cartier": group_value(&c.cartier),
                "principal": group_value(&c.principal),
                "quotient": group_value(&c.quotient),
                "picard": group_value(&c.picard),
            })
        }
        Command::NorCompare => {
            let x = parsed.to_scheme()?;
            verdicts.extend(units_checks(&x, opts)?);
            let c = nor_comparison(&x)?;
            json!({
                "picard": group_value(&c.picard),
                "picard_nor": group_value(&c.picard_nor),
                "pullback_kernel": group_value(&c.pullback_kernel),
                "pullback_cokernel": group_value(&c.pullback_cokernel),
                "pullback_injective": c.pullback.is_injective(),
                "pullback_surjective": c.pullback.is_surjective(),
                "exact": c.is_exact(),
                "sequence": sequence_value(&c.sequence),
            })
        }
        Command::MayerVietoris => {
            let x = parsed.to_scheme()?;
            verdicts.extend(units_checks(&x, opts)?);
            let mv = mayer_vietoris(&x)?;
            json!({
                "picard": group_value(&mv.picard),
                "picard_first": group_value(&mv.picard_first),
                "picard_rest": group_value(&mv.picard_rest),
                "picard_meet": group_value(&mv.picard_meet),
                "exact": mv.is_exact(),
                "sequence": sequence_value(&mv.sequence),
            })
        }
    };
    Ok(Outcome { report, verdicts })
}

fn sequence_value(s: &LongExactSequence) -> Value {
    Value::Array(s.groups.iter().map(group_value).collect())
}

/// Cohomology of the units sheaf reduced mod 2 and mod 3, computed by the
/// engine and by enumeration.
fn units_checks(x: &MonoidScheme, opts: &Options) -> Result<Vec<Verdict>, CliError> {
    if !opts.verify {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for m in [2, 3] {
        out.extend(verify_units_mod(x, m, &opts.budget())?);
    }
    Ok(out)
}
