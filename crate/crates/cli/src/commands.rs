use std::fs;
use std::path::Path;

use serde::Serialize;

use ellfib_core::atiyah::verify_reg_lemma;
use ellfib_core::chern::{cthm1_bound, d2_thresholds, universal_extension, DiscriminantReport};
use ellfib_core::lattice::{
    classify_component, component_count, orbit_partition_with, pontrjagin, ComponentLabel,
    EvenLattice, ModClass, OrbitPartition,
};
use ellfib_core::model_surfaces::{
    double_cover, rational_surface_divisor, triple_cover, BaseLocus, CoverNumerology,
    ProjBundleSpace,
};
use ellfib_core::p1bundles::{
    admissibility_bound, admissibility_violations, bottom_gap_limit, bound_e, enumerate_admissible,
    top_gap_limit, total_gap_bound, Side, SplittingType, Violation,
};
use ellfib_core::Rational;

use crate::output::{json, parse_list, render, render_record, CmdResult, Failure, Table};
use crate::{Command, Corollary, Format};

pub fn run(command: &Command, format: Format) -> CmdResult {
    match *command {
        Command::Enumerate { n, d, delta } => enumerate(format, n, d, delta),
        Command::Check { ref twists, d } => check(format, twists, d),
        Command::Bounds { n, d, p1 } => bounds(format, n, d, p1),
        Command::Thresholds { n, d, g } => thresholds(format, n, d, g),
        Command::Components { d, n } => components(format, d, n),
        Command::Pontrjagin {
            ref lattice,
            n,
            ref class,
        } => pontrjagin_cmd(format, lattice, n, class),
        Command::Orbit {
            ref lattice,
            n,
            root_bound,
            budget,
        } => orbit(format, lattice, n, root_bound, budget),
        Command::Lattice { d } => Ok(gram_json(&EvenLattice::lambda_d(d)?)),
        Command::Cover2 { a, big_n, t } => cover(format, double_cover(a, big_n)?, t),
        Command::Cover3 { a, b, big_n, t } => cover(format, triple_cover(a, b, big_n)?, t),
        Command::Leray { ref drops, k, t } => leray(format, drops, k, t),
        Command::Ratsurf { n } => ratsurf(format, n),
        Command::Tables {
            corollary,
            dmin,
            dmax,
        } => tables(format, corollary, dmin, dmax),
        Command::Extension {
            n,
            r,
            delta_w,
            delta,
            d,
        } => extension(format, n, r, delta_w, delta, d),
        Command::RegLemma { e, n0, r0 } => reg_lemma(format, e, n0, r0),
    }
}

/// One matrix row per line, so large Gram matrices stay readable.
fn gram_json(lattice: &EvenLattice) -> String {
    let rows: Vec<String> = lattice
        .gram()
        .iter()
        .map(|row| serde_json::to_string(row).expect("integers serialize"))
        .collect();
    format!("[\n  {}\n]\n", rows.join(",\n  "))
}

fn enumerate(format: Format, n: usize, d: i64, delta: i64) -> CmdResult {
    let types = enumerate_admissible(n, d, delta)?;
    let mut table = Table::new(&["type"]);
    for s in &types {
        let cells: Vec<String> = s.twists().iter().map(i64::to_string).collect();
        table.push(vec![cells.join(",")]);
    }
    Ok(match format {
        Format::Text => {
            let mut out: String = types.iter().map(|s| format!("{s}\n")).collect();
            out.push_str(&format!(
                "{} admissible type(s) of rank {n}, degree {delta}, d = {d}\n",
                types.len()
            ));
            out
        }
        _ => render(format, &types, &table),
    })
}

#[derive(Serialize)]
struct CheckReport {
    #[serde(rename = "type")]
    splitting_type: SplittingType,
    d: i64,
    admissible: bool,
    violations: Vec<Violation>,
}

fn check(format: Format, raw: &str, d: i64) -> CmdResult {
    let twists = parse_list("type", raw)?;
    if twists.windows(2).any(|w| w[0] > w[1]) {
        eprintln!("warning: --type {raw:?} is not ascending; sorting it");
    }
    let s = SplittingType::new(twists)?;
    let violations = admissibility_violations(&s, d)?;
    let report = CheckReport {
        splitting_type: s.clone(),
        d,
        admissible: violations.is_empty(),
        violations,
    };
    let mut table = Table::new(&["bound", "value", "limit"]);
    for v in &report.violations {
        table.push(vec![
            v.bound.clone(),
            v.value.to_string(),
            v.limit.to_string(),
        ]);
    }
    let out = match format {
        Format::Text => {
            let mut out = format!("{}\n", if report.admissible { "pass" } else { "fail" });
            for v in &report.violations {
                out.push_str(&format!("  {v}\n"));
            }
            out
        }
        _ => render(format, &report, &table),
    };
    if report.admissible {
        Ok(out)
    } else {
        let names: Vec<&str> = report.violations.iter().map(|v| v.bound.as_str()).collect();
        Err(Failure::Validation {
            output: out,
            message: format!("{s} with d = {d} violates {}", names.join("; ")),
        })
    }
}

#[derive(Serialize)]
struct RankBound {
    r: usize,
    e_sub: usize,
    sub: Rational,
    e_quot: usize,
    quot: Rational,
}

#[derive(Serialize)]
struct BoundsReport {
    n: usize,
    d: i64,
    p1: bool,
    ranks: Vec<RankBound>,
    top_gap_limit: Rational,
    bottom_gap_limit: i64,
    total_gap_bound: Rational,
    coarse_gap_bound: Rational,
}

fn bounds(format: Format, n: usize, d: i64, p1: bool) -> CmdResult {
    if n < 2 {
        return Err(Failure::validation("--n must be at least 2"));
    }
    let mut ranks = Vec::new();
    for r in 1..n {
        ranks.push(RankBound {
            r,
            e_sub: bound_e(n, r, Side::Sub),
            sub: admissibility_bound(n, r, d, Side::Sub, p1)?,
            e_quot: bound_e(n, r, Side::Quot),
            quot: admissibility_bound(n, r, d, Side::Quot, p1)?,
        });
    }
    let report = BoundsReport {
        n,
        d,
        p1,
        ranks,
        top_gap_limit: top_gap_limit(n, d),
        bottom_gap_limit: bottom_gap_limit(n, d),
        total_gap_bound: total_gap_bound(n, d),
        coarse_gap_bound: Rational::new(3 * d, 2),
    };
    let formula = if p1 {
        "(r(n-r)+e-1)d/(2nr) - (e-1)/(nr)"
    } else {
        "(r(n-r)+e-1)d/(2nr)"
    };
    let mut table = Table::new(&["r", "e_sub", "sub_bound", "e_quot", "quot_bound", "formula"]);
    for b in &report.ranks {
        table.push(vec![
            b.r.to_string(),
            b.e_sub.to_string(),
            b.sub.to_string(),
            b.e_quot.to_string(),
            b.quot.to_string(),
            formula.to_string(),
        ]);
    }
    Ok(match format {
        Format::Text => {
            let top = if n % 2 == 1 { "(n-1)d/2" } else { "nd/2 - 1" };
            let mut out = table.text();
            out.push('\n');
            out.push_str(&format!(
                "n*a_n - deg <= {}    [{top}]\n",
                report.top_gap_limit
            ));
            out.push_str(&format!(
                "deg - n*a_1 <= {}    [(n-1)(d-1)]\n",
                report.bottom_gap_limit
            ));
            out.push_str(&format!(
                "a_n - a_1   <= {}    [sum of the two over n; coarse 3d/2 = {}]\n",
                report.total_gap_bound, report.coarse_gap_bound
            ));
            out
        }
        _ => render(format, &report, &table),
    })
}

fn thresholds(format: Format, n: i64, d: i64, g: i64) -> CmdResult {
    let t = d2_thresholds(n, d, g)?;
    let (h1_formula, bp_formula) = if n % 2 == 1 {
        ("(2n-3)d + 4n(g-1)", "(2n-3)d + 4n(g-1) + 4")
    } else if g == 0 {
        ("(2n-2)d - 4n - 2", "(2n-2)d - 4n + 2")
    } else {
        ("(2n-2)d + 4n(g-1)", "(2n-2)d + 4n(g-1) + 4")
    };
    let excluded = t
        .excluded_characteristic
        .map_or("none".to_string(), |p| p.to_string());
    Ok(render_record(
        format,
        &t,
        &[
            ("n", n.to_string()),
            ("d", d.to_string()),
            ("g", g.to_string()),
            (
                "h1_bound",
                format!("{}    D^2 > {h1_formula} gives h^1(D) = 0", t.h1_bound),
            ),
            (
                "basepoint_bound",
                format!(
                    "{}    D^2 > {bp_formula} gives |D| base point free",
                    t.basepoint_bound
                ),
            ),
            ("excluded_characteristic", excluded),
        ],
    ))
}

#[derive(Serialize)]
struct ComponentsReport {
    d: i64,
    n: i64,
    components: i64,
    residues: Vec<i64>,
}

fn components(format: Format, d: i64, n: i64) -> CmdResult {
    let count = component_count(d, n)?;
    let report = ComponentsReport {
        d,
        n,
        components: count,
        residues: (0..2 * n).step_by(2).collect(),
    };
    Ok(match format {
        Format::Json => json(&report),
        _ => format!("{count}\n"),
    })
}

fn load_lattice(path: &Path) -> Result<EvenLattice, Failure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--lattice {}: {e}", path.display())))?;
    let gram: Vec<Vec<i64>> = serde_json::from_str(&raw).map_err(|e| {
        Failure::Usage(format!(
            "--lattice {}: not a JSON integer matrix: {e}",
            path.display()
        ))
    })?;
    Ok(EvenLattice::from_gram(gram)?)
}

#[derive(Serialize)]
struct PontrjaginReport {
    n: u64,
    class: Vec<i64>,
    pontrjagin: i64,
    divisibility: u64,
    label: ComponentLabel,
}

fn pontrjagin_cmd(format: Format, lattice: &Path, n: u64, class: &str) -> CmdResult {
    let lattice = load_lattice(lattice)?;
    let class = ModClass::new(n, &parse_list("class", class)?)?;
    let report = PontrjaginReport {
        n,
        class: class.coords().to_vec(),
        pontrjagin: pontrjagin(&lattice, &class)?,
        divisibility: class.divisibility(),
        label: classify_component(&lattice, &class)?,
    };
    let label = match report.label {
        ComponentLabel::Classified { pontrjagin } => {
            format!("component {pontrjagin} mod {}", 2 * n)
        }
        ComponentLabel::OutOfClassifiedRange { divisibility } => {
            format!("imprimitive (divisibility {divisibility}), not classified")
        }
    };
    Ok(render_record(
        format,
        &report,
        &[
            ("pontrjagin", report.pontrjagin.to_string()),
            ("divisibility", report.divisibility.to_string()),
            ("label", label),
        ],
    ))
}

#[derive(Serialize)]
struct OrbitReport<'a> {
    #[serde(flatten)]
    partition: &'a OrbitPartition,
    single_orbit_per_level: bool,
}

fn orbit(format: Format, lattice: &Path, n: u64, root_bound: i64, budget: u128) -> CmdResult {
    let lattice = load_lattice(lattice)?;
    let partition = orbit_partition_with(&lattice, n, root_bound, budget, true)?;
    let single = partition.single_orbit_per_level();
    if !single {
        eprintln!("note: some Pontrjagin level splits into several orbits; inconclusive for the full isometry group");
    }
    Ok(match format {
        Format::Json => json(&OrbitReport {
            partition: &partition,
            single_orbit_per_level: single,
        }),
        Format::Tsv => partition.to_tsv(),
        Format::Text => {
            let mut table = Table::new(&["orbit", "pontrjagin", "divisibility", "size"]);
            for o in &partition.orbits {
                table.push(vec![
                    o.id.to_string(),
                    o.pontrjagin.to_string(),
                    o.divisibility.to_string(),
                    o.len().to_string(),
                ]);
            }
            let mut out = table.text();
            out.push_str(&format!(
                "{} orbit(s), {} reflection generator(s) mod {n}, one orbit per level: {}\n",
                partition.orbits.len(),
                partition.root_count,
                if single { "yes" } else { "no" }
            ));
            out
        }
    })
}

#[derive(Serialize)]
struct TwistReport {
    t: i64,
    d_squared: i64,
    h1_nonzero: bool,
    base_locus: BaseLocus,
}

#[derive(Serialize)]
struct CoverReport {
    #[serde(flatten)]
    cover: CoverNumerology,
    #[serde(skip_serializing_if = "Option::is_none")]
    twist: Option<TwistReport>,
}

fn cover(format: Format, cover: CoverNumerology, t: Option<i64>) -> CmdResult {
    let triple = cover.b.is_some();
    let twist = t.map(|t| TwistReport {
        t,
        d_squared: cover.d_squared_at(t),
        h1_nonzero: cover.h1_nonzero(t),
        base_locus: cover.base_locus(t),
    });
    let mut fields = vec![("a", cover.a.to_string())];
    if let Some(b) = cover.b {
        fields.push(("b", b.to_string()));
    }
    fields.push(("N", cover.big_n.to_string()));
    if triple {
        fields.push(("d", format!("{}    [N - a - b]", cover.d)));
        fields.push((
            "K_Y",
            format!("{}F    [N - a - b - 2]", cover.canonical_coefficient),
        ));
        fields.push(("D^2", format!("{}    [-2a - 2b + d]", cover.d_squared)));
    } else {
        fields.push(("d", format!("{}    [N - a]", cover.d)));
        fields.push((
            "K_Y",
            format!("{}F    [N - a - 2]", cover.canonical_coefficient),
        ));
        fields.push(("D^2", format!("{}    [-2a]", cover.d_squared)));
    }
    fields.push(("D.F", cover.fiber_degree.to_string()));
    let drop = if triple { "b" } else { "a" };
    fields.push((
        "h1_nonzero_for",
        format!("t <= {}    [{drop} - 2]", cover.h1_threshold),
    ));
    fields.push((
        "base_points_for",
        format!("t <= {}    [{drop} - 1]", cover.basepoint_threshold),
    ));
    if let Some(tw) = &twist {
        let formula = if triple {
            "-2a - 2b + d + 6t"
        } else {
            "-2a + 4t"
        };
        fields.push(("t", tw.t.to_string()));
        fields.push(("D_t^2", format!("{}    [{formula}]", tw.d_squared)));
        fields.push(("h1(D_t) != 0", tw.h1_nonzero.to_string()));
        fields.push(("base_locus", format!("{:?}", tw.base_locus).to_lowercase()));
    }
    Ok(render_record(
        format,
        &CoverReport { cover, twist },
        &fields,
    ))
}

#[derive(Serialize)]
struct LerayReport {
    space: ProjBundleSpace,
    k: i64,
    t: i64,
    pushforward: SplittingType,
    h0: u64,
    h1: u64,
    chi: i64,
}

fn leray(format: Format, drops: &str, k: i64, t: i64) -> CmdResult {
    let space = ProjBundleSpace::new(parse_list("drops", drops)?)?;
    let c = space.leray_cohomology(k, t)?;
    let report = LerayReport {
        pushforward: space.pushforward().sym_power(k as usize),
        space,
        k,
        t,
        h0: c.h0,
        h1: c.h1,
        chi: c.chi,
    };
    Ok(render_record(
        format,
        &report,
        &[
            (
                "pushforward",
                format!("{}    [Sym^k of (0, -a_2, ..., -a_n)]", report.pushforward),
            ),
            ("h0", report.h0.to_string()),
            ("h1", report.h1.to_string()),
            ("chi", report.chi.to_string()),
        ],
    ))
}

fn ratsurf(format: Format, n: i64) -> CmdResult {
    let r = rational_surface_divisor(n)?;
    Ok(render_record(
        format,
        &r,
        &[
            ("surface", format!("F_{}", r.hirzebruch_index)),
            ("linear_system", r.linear_system.clone()),
            ("D^2", format!("{}    [n - 2]", r.d_squared)),
            (
                "D.F",
                format!("{}    [D^2 + 2, adjunction with K = -F]", r.fiber_degree),
            ),
            ("chi", format!("{}    [(D^2 + D.F)/2 + 1]", r.chi)),
            ("pushforward", r.pushforward.to_string()),
        ],
    ))
}

#[derive(Serialize)]
struct SharpnessRow {
    d: i64,
    h1_cover: CoverNumerology,
    h1_twist: i64,
    d2_h1: i64,
    basepoint_cover: CoverNumerology,
    basepoint_twist: i64,
    d2_basepoint: i64,
}

fn tables(format: Format, corollary: Corollary, dmin: i64, dmax: i64) -> CmdResult {
    if dmin < 2 {
        return Err(Failure::validation("--dmin must be at least 2"));
    }
    if dmax < dmin {
        return Err(Failure::validation("--dmax must be at least --dmin"));
    }
    let mut rows = Vec::new();
    for d in dmin..=dmax {
        let row = match corollary {
            Corollary::N2 => {
                let a = d - 1;
                let c = double_cover(a, 2 * d - 1)?;
                SharpnessRow {
                    d,
                    h1_cover: c.clone(),
                    h1_twist: a - 2,
                    d2_h1: c.d_squared_at(a - 2),
                    basepoint_cover: c.clone(),
                    basepoint_twist: a - 1,
                    d2_basepoint: c.d_squared_at(a - 1),
                }
            }
            Corollary::N3 => {
                let h1 = triple_cover(d - 2, d - 1, 3 * (d - 1))?;
                let bp = if d >= 3 {
                    triple_cover(d - 3, d - 2, 3 * (d - 2) + 1)?
                } else {
                    triple_cover(1, 1, 4)?
                };
                let (t1, t2) = (h1.h1_threshold, bp.basepoint_threshold);
                SharpnessRow {
                    d,
                    d2_h1: h1.d_squared_at(t1),
                    h1_cover: h1,
                    h1_twist: t1,
                    d2_basepoint: bp.d_squared_at(t2),
                    basepoint_cover: bp,
                    basepoint_twist: t2,
                }
            }
        };
        let n = row.h1_cover.n;
        let t = d2_thresholds(n, d, 0)?;
        if (row.d2_h1, row.d2_basepoint) != (t.h1_bound, t.basepoint_bound) {
            return Err(Failure::validation(format!(
                "d = {d}: realized D^2 ({}, {}) differ from the thresholds ({}, {})",
                row.d2_h1, row.d2_basepoint, t.h1_bound, t.basepoint_bound
            )));
        }
        rows.push(row);
    }
    let mut table = match corollary {
        Corollary::N2 => Table::new(&["d", "a_max", "N", "D2_h1", "D2_bp", "formula"]),
        Corollary::N3 => {
            Table::new(&["d", "h1_(a,b,N)", "D2_h1", "bp_(a,b,N)", "D2_bp", "formula"])
        }
    };
    for r in &rows {
        let abn = |c: &CoverNumerology| format!("({},{},{})", c.a, c.b.unwrap_or(0), c.big_n);
        table.push(match corollary {
            Corollary::N2 => vec![
                r.d.to_string(),
                r.h1_cover.a.to_string(),
                r.h1_cover.big_n.to_string(),
                r.d2_h1.to_string(),
                r.d2_basepoint.to_string(),
                "a = d-1, D^2 = 2d-10 at t = a-2, 2d-6 at t = a-1".to_string(),
            ],
            Corollary::N3 => vec![
                r.d.to_string(),
                abn(&r.h1_cover),
                r.d2_h1.to_string(),
                abn(&r.basepoint_cover),
                r.d2_basepoint.to_string(),
                "D^2 = 3d-12 at t = b-2, 3d-8 at t = b-1".to_string(),
            ],
        });
    }
    Ok(render(format, &rows, &table))
}

#[derive(Serialize)]
struct ExtensionReport {
    #[serde(flatten)]
    data: DiscriminantReport,
    bound_p1: i64,
    bound_general: i64,
    satisfies_p1: bool,
    satisfies_general: bool,
}

fn extension(format: Format, n: i64, r: i64, delta_w: i64, delta: i64, d: i64) -> CmdResult {
    let data = universal_extension(n, r, delta_w, delta, d)?.report();
    let bound_p1 = cthm1_bound(data.r, data.fiber_degree, d, true)?;
    let bound_general = cthm1_bound(data.r, data.fiber_degree, d, false)?;
    let report = ExtensionReport {
        data,
        bound_p1,
        bound_general,
        satisfies_p1: data.discriminant >= bound_p1,
        satisfies_general: data.discriminant >= bound_general,
    };
    Ok(render_record(
        format,
        &report,
        &[
            ("rank", data.r.to_string()),
            ("c1^2", format!("{}    [D^2 - 2n delta_W]", data.c1_sq)),
            ("c2", format!("{}    [-n delta_W]", data.c2)),
            (
                "Delta",
                format!(
                    "{}    [-2n delta_W + 2r delta + r(n+2)d]",
                    data.discriminant
                ),
            ),
            ("bound_p1", format!("{bound_p1}    [(r^2-e)d + 2(e-1)]")),
            ("bound_general", format!("{bound_general}    [(r^2-e)d]")),
        ],
    ))
}

fn reg_lemma(format: Format, e: u64, n0: i64, r0: u64) -> CmdResult {
    let report = verify_reg_lemma(e, n0, r0)?;
    let out = render_record(
        format,
        &report,
        &[
            ("e", e.to_string()),
            ("types_checked", report.types_checked.to_string()),
            ("commutative_types", report.commutative_types.to_string()),
            ("counterexamples", report.counterexamples.len().to_string()),
        ],
    );
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Validation {
            output: out,
            message: "dim End >= e with equality iff End is commutative fails".into(),
        })
    }
}
