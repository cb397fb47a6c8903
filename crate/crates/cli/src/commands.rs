use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use seifert::seifert::{col_enlarge, congruence, row_enlarge, verify_certificate};
use seifert::wire::{parse_rational, Wire};
use seifert::{
    alexander_polynomial, apply_certificate, blanchfield_matrix, distinguish, elementary_ideal, evaluate_ideal,
    factor_symplectic, module_decomposition, realize_delta, reduce, reduce_to_invertible, scalar_form, t_action,
    verify_chain, z_action, Certificate, ElementaryMove, Factor, Flavor, Lattice, MatrixQ, Rational, SeifertMatrix,
};

use crate::{Cli, Command, Side};

/// Rendered output and whether it reports a negative finding.
pub struct Outcome {
    pub text: String,
    pub finding: bool,
}

type Res<T> = std::result::Result<T, String>;

fn read_json(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn load<T: Wire>(path: &Path) -> Res<T> {
    T::from_json(&read_json(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn lib<T>(r: seifert::Result<T>) -> Res<T> {
    r.map_err(|e| e.to_string())
}

fn rationals(list: &str) -> Res<Vec<Rational>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| lib(parse_rational(s)))
        .collect()
}

fn flavor_override(cert: Certificate, flavor: &Option<String>) -> Res<Certificate> {
    match flavor {
        Some(f) => Ok(Certificate { flavor: lib(Flavor::parse(f))?, ..cert }),
        None => Ok(cert),
    }
}

fn describe(v: &SeifertMatrix) -> String {
    let integral = if v.is_integral() { "integral" } else { "rational" };
    format!("size {}, genus {}, {integral}, det V = {}", v.size(), v.genus(), v.determinant())
}

fn render_move(mv: &ElementaryMove) -> String {
    match mv {
        ElementaryMove::RowEnlarge { x, rho } | ElementaryMove::ColEnlarge { x, rho } => {
            let rho: Vec<String> = rho.iter().map(ToString::to_string).collect();
            format!("{}  x = {x}  rho = ({})", mv.kind().name(), rho.join(", "))
        }
        ElementaryMove::Congruence { p } => format!("congruence  P =\n{}", indent(&p.to_string())),
        _ => mv.kind().name().to_string(),
    }
}

fn render_certificate(cert: &Certificate) -> String {
    let mut out = format!("certificate ({}, {} moves)\n", cert.flavor.name(), cert.moves.len());
    for (i, mv) in cert.moves.iter().enumerate() {
        let _ = writeln!(out, "  {}. {}", i + 1, render_move(mv));
    }
    out
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("    {l}\n")).collect()
}

fn ideal_text(g: &str, ring: &str) -> String {
    match g {
        "0" => "0".into(),
        "1" => ring.into(),
        g => format!("{g}{ring}"),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Output that is either JSON or text.
struct Render {
    json: bool,
}

impl Render {
    fn out(&self, value: Value, text: impl FnOnce() -> String, finding: bool) -> Res<Outcome> {
        let text = if self.json { serde_json::to_string_pretty(&value).expect("serializable") } else { text() };
        Ok(Outcome { text, finding })
    }
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let r = Render { json: cli.json };
    match &cli.command {
        Command::Validate { matrix } => {
            let raw: MatrixQ = load(matrix)?;
            let v = lib(SeifertMatrix::validate(raw))?;
            r.out(v.to_json(), || format!("valid Seifert matrix: {}", describe(&v)), false)
        }
        Command::Alexander { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let d = alexander_polynomial(&v);
            r.out(d.to_json(), || format!("Δ(t) = {d}"), false)
        }
        Command::Decompose { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let m = module_decomposition(&v);
            r.out(
                m.to_json(),
                || {
                    if m.invariant_factors.is_empty() {
                        return "trivial module".into();
                    }
                    let mut s = String::from("invariant factors over Q[t,t^-1]:\n");
                    for f in &m.invariant_factors {
                        let _ = writeln!(s, "  {f}");
                    }
                    let _ = write!(s, "cyclic: {}", yes(m.is_cyclic()));
                    s
                },
                false,
            )
        }
        Command::Blanchfield { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let b = blanchfield_matrix(&v);
            r.out(
                b.to_json(),
                || {
                    let rows: Vec<(String, String, String)> = (0..v.size())
                        .flat_map(|i| (0..v.size()).map(move |k| (i, k)))
                        .map(|(i, k)| {
                            (
                                format!("φ(b{}, b{})", i + 1, k + 1),
                                b.pairing(i, k).to_string(),
                                b.reduced_pairing(i, k).to_string(),
                            )
                        })
                        .collect();
                    let w0 = rows.iter().map(|x| x.0.chars().count()).max().unwrap_or(0);
                    let w1 = rows.iter().map(|x| x.1.chars().count()).max().unwrap_or(0);
                    rows.iter()
                        .map(|(a, e, red)| format!("{a:<w0$}  {e:<w1$}  mod Λ: {red}\n"))
                        .collect()
                },
                false,
            )
        }
        Command::ScalarForm { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let s = lib(scalar_form(&v))?;
            r.out(s.to_json(), || format!("S =\n{}S = J: {}", s.matrix, yes(s.equals_j)), !s.equals_j)
        }
        Command::TAction { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let (t, z) = (lib(t_action(&v))?, lib(z_action(&v))?);
            r.out(json!({"T": t.to_json(), "Z": z.to_json()}), || format!("T =\n{t}Z =\n{z}"), false)
        }
        Command::ReduceInvertible { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let (w, cert) = reduce_to_invertible(&v);
            r.out(
                json!({"result": w.to_json(), "certificate": cert.to_json()}),
                || format!("invertible ({}):\n{w}{}", describe(&w), render_certificate(&cert)),
                false,
            )
        }
        Command::Enlarge { matrix, kind, x, rho } => {
            let v: SeifertMatrix = load(matrix)?;
            let x = lib(parse_rational(x))?;
            let rho = rationals(rho)?;
            let w = lib(match kind {
                Side::Row => row_enlarge(&v, &x, &rho),
                Side::Col => col_enlarge(&v, &x, &rho),
            })?;
            r.out(w.to_json(), || w.to_string(), false)
        }
        Command::Reduce { matrix } => {
            let v: SeifertMatrix = load(matrix)?;
            let (w, kind) = lib(reduce(&v))?;
            r.out(
                json!({"result": w.to_json(), "move": kind.name()}),
                || format!("{}:\n{w}", kind.name()),
                false,
            )
        }
        Command::Congruence { matrix, p } => {
            let v: SeifertMatrix = load(matrix)?;
            let p: MatrixQ = load(p)?;
            let w = lib(congruence(&v, &p))?;
            r.out(w.to_json(), || w.to_string(), false)
        }
        Command::ApplyCert { matrix, certificate, flavor } => {
            let v: SeifertMatrix = load(matrix)?;
            let cert = flavor_override(load(certificate)?, flavor)?;
            let out = lib(apply_certificate(&v, &cert))?;
            r.out(
                json!({"result": out.result.to_json(), "transport": out.transport.to_json()}),
                || format!("result:\n{}generator transport:\n{}", out.result, out.transport),
                false,
            )
        }
        Command::VerifyCert { from, to, certificate, flavor } => {
            let v: SeifertMatrix = load(from)?;
            let w: SeifertMatrix = load(to)?;
            let cert = flavor_override(load(certificate)?, flavor)?;
            let valid = lib(verify_certificate(&v, &w, &cert))?;
            r.out(
                json!({ "valid": valid }),
                || {
                    let verdict = if valid { "carries" } else { "does not carry" };
                    format!("{} certificate {verdict} the first matrix to the second", cert.flavor.name())
                },
                !valid,
            )
        }
        Command::FactorSymplectic { p } => {
            let p: MatrixQ = load(p)?;
            let f = lib(factor_symplectic(&p))?;
            r.out(
                f.to_json(),
                || {
                    let mut s = format!("{} factors\n", f.factors.len());
                    for (i, factor) in f.factors.iter().enumerate() {
                        match factor {
                            Factor::Delta(d) => {
                                let _ = writeln!(s, "  {}. Δ_{}", i + 1, d.n());
                            }
                            Factor::Integral(m) => {
                                let _ = write!(s, "  {}. integral\n{}", i + 1, indent(&m.to_string()));
                            }
                        }
                    }
                    s
                },
                false,
            )
        }
        Command::RealizeDelta { matrix, n, integral } => {
            let v: SeifertMatrix = load(matrix)?;
            let n = lib(parse_rational(n))?;
            let d = lib(realize_delta(&v, &n, *integral))?;
            r.out(
                d.to_json(),
                || {
                    format!(
                        "enlarged source:\n{}P =\n{}enlarged target:\n{}{}",
                        d.tilde_v,
                        d.p,
                        d.tilde_w,
                        render_certificate(&d.certificate)
                    )
                },
                false,
            )
        }
        Command::ElementaryIdeals { matrix, points } => {
            let v: SeifertMatrix = load(matrix)?;
            let points = rationals(points)?;
            let mut entries = Vec::new();
            let mut text = String::new();
            for k in 1..=v.size().max(1) {
                let ideal = lib(elementary_ideal(&v, k))?;
                let evaluations = points.iter().map(|p| lib(evaluate_ideal(&ideal, p))).collect::<Res<Vec<_>>>()?;
                let gens: Vec<String> = ideal.generators.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "E{k} = ({})", gens.join(", "));
                for e in &evaluations {
                    let _ = writeln!(text, "  t = {}: {}", e.point, ideal_text(&e.generator.to_string(), &e.ring()));
                }
                entries.push(json!({"ideal": ideal.to_json(), "evaluations": evaluations.to_json()}));
            }
            r.out(Value::Array(entries), || text, false)
        }
        Command::Distinguish { first, second, points } => {
            let v: SeifertMatrix = load(first)?;
            let w: SeifertMatrix = load(second)?;
            let report = lib(distinguish(&v, &w, &rationals(points)?))?;
            r.out(
                report.to_json(),
                || {
                    let eq = |b: bool| if b { "equal" } else { "differ" };
                    let witness = report.integral_witness.as_ref().map_or("none found".into(), ToString::to_string);
                    format!(
                        "Alexander polynomials: {}\ninvariant factors:     {}\nintegral witness:      {witness}\nobstruction:           {}",
                        eq(report.alexander_equal),
                        eq(report.factors_equal),
                        yes(report.has_obstruction())
                    )
                },
                report.has_obstruction(),
            )
        }
        Command::LatticeSelfdual { lattice } => {
            let l: Lattice = load(lattice)?;
            let (self_dual, admissible) = (l.is_self_dual(), l.is_admissible());
            r.out(
                json!({"self_dual": self_dual, "admissible": admissible}),
                || format!("self-dual:  {}\nadmissible: {}", yes(self_dual), yes(admissible)),
                !self_dual,
            )
        }
        Command::LatticeSympbasis { lattice } => {
            let l: Lattice = load(lattice)?;
            let b = lib(l.symplectic_basis())?;
            r.out(b.to_json(), || format!("symplectic basis (columns):\n{b}"), false)
        }
        Command::LatticeAdjacency { first, second } => {
            let a: Lattice = load(first)?;
            let b: Lattice = load(second)?;
            let n = lib(a.adjacency(&b))?;
            let witness = match &n {
                Some(_) if a.is_self_dual() && b.is_self_dual() => Some(lib(a.adjacent_symplectic_bases(&b))?),
                _ => None,
            };
            r.out(
                json!({"n": n.to_json(), "witness": witness.to_json()}),
                || match (&n, &witness) {
                    (None, _) => "not adjacent".into(),
                    (Some(n), None) => format!("{n}-adjacent"),
                    (Some(n), Some(w)) => format!("{n}-adjacent\nbasis of the first:\n{}basis of the second:\n{}", w.basis_b, w.basis_b_prime),
                },
                n.is_none(),
            )
        }
        Command::LatticeSeifert { lattice, basis } => {
            let l: Lattice = load(lattice)?;
            let b = match basis {
                Some(path) => load(path)?,
                None => lib(l.symplectic_basis())?,
            };
            let v = lib(l.seifert_matrix(&b))?;
            r.out(v.to_json(), || v.to_string(), false)
        }
        Command::VerifyChain { chain } => {
            let lattices: Vec<Lattice> = load(chain)?;
            let report = lib(verify_chain(&lattices))?;
            r.out(
                report.to_json(),
                || {
                    let mut s = String::new();
                    for i in &report.inadmissible {
                        let _ = writeln!(s, "lattice {i} is not admissible");
                    }
                    for step in &report.steps {
                        let adj = step.adjacency.as_ref().map_or("not adjacent".into(), |n| format!("{n}-adjacent"));
                        let _ = writeln!(s, "{} -> {}: {adj}, z-inclusion {}", step.index - 1, step.index, yes(step.z_inclusion));
                    }
                    let _ = write!(s, "chain {}", if report.is_valid() { "valid" } else { "invalid" });
                    s
                },
                !report.is_valid(),
            )
        }
    }
}
