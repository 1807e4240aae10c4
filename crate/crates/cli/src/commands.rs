use std::path::Path;

use anyhow::Result;
use monoid_holes::holes::{HoleRepresentation, SemigroupProblem};
use monoid_holes::linalg::IntVector;
use monoid_holes::polyhedral::in_cone;
use monoid_holes::saturation::{certify_infinite, hole_bound, max_norm, saturation_points};
use monoid_holes::transport::{table_feasible, transportation_matrix, verify_vlach, TransportDims, VlachReport};
use monoid_holes::Limits;

use crate::input::{parse_vector, read_margins, read_matrix};
use crate::report::Report;
use crate::TransportArgs;

pub const EXIT_OK: u8 = 0;
pub const EXIT_HOLES: u8 = 10;

pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

fn load(command: &str, path: &Path, limits: Limits) -> Result<(Report, SemigroupProblem)> {
    let a = read_matrix(path)?;
    let mut report = Report::new(command);
    report.matrix("matrix", &a);
    Ok((report, SemigroupProblem::new(a, limits)?))
}

fn holes_code(normal: bool) -> u8 {
    if normal {
        EXIT_OK
    } else {
        EXIT_HOLES
    }
}

pub fn fundamental(path: &Path, limits: Limits) -> Result<Outcome> {
    let (mut report, problem) = load("fundamental", path, limits)?;
    let f = problem.fundamental_holes()?;
    report.vectors("hilbert_basis", f.hilbert_basis.elements());
    report.vectors("basis_holes", &f.basis_holes);
    report.vectors("fundamental_holes", &f.holes);
    report.field("normal", f.is_normal());
    report.field("status", "complete");
    Ok(Outcome {
        report,
        code: holes_code(f.is_normal()),
    })
}

fn verdict(rep: &HoleRepresentation) -> &'static str {
    if rep.is_empty() {
        "finite (empty)"
    } else if rep.is_finite() {
        "finite"
    } else {
        "infinite"
    }
}

fn cell_line(shift: &IntVector, generators: &[IntVector]) -> String {
    let gens: Vec<String> = generators.iter().map(ToString::to_string).collect();
    if gens.is_empty() {
        format!("{shift} |")
    } else {
        format!("{shift} | {}", gens.join("; "))
    }
}

pub fn holes(path: &Path, limits: Limits) -> Result<Outcome> {
    let (mut report, problem) = load("holes", path, limits)?;
    let f = problem.fundamental_holes()?;
    report.vectors("fundamental_holes", &f.holes);
    let ideals = problem.hole_ideals()?;
    report.list(
        "hole_ideals",
        f.holes.iter().zip(ideals).map(|(h, i)| format!("f={h} ideal={i}")),
    );
    let rep = problem.holes_representation()?;
    report.list("cells", rep.cells.iter().map(|c| cell_line(&c.shift, &c.generators)));
    report.list(
        "cell_sources",
        rep.cells.iter().map(|c| format!("f={} pair={}", c.fundamental_hole, c.pair)),
    );
    if let Some(all) = rep.finite_holes() {
        report.vectors("holes", &all);
    }
    report.field("verdict", verdict(&rep));
    report.field("status", "complete");
    Ok(Outcome {
        report,
        code: holes_code(f.is_normal()),
    })
}

pub fn saturation(path: &Path, limits: Limits) -> Result<Outcome> {
    let (mut report, problem) = load("saturation", path, limits)?;
    let f = problem.fundamental_holes()?;
    report.field("normal", f.is_normal());
    let sat = saturation_points(&problem)?;
    report.field("ideal", &sat.ideal);
    report.list("generator_map", sat.generator_map.iter().map(|(g, s)| format!("{g} -> {s}")));
    report.vectors("points", &sat.points);
    report.vectors("filtered_out", &sat.filtered_out);
    report.field("status", "complete");
    Ok(Outcome { report, code: EXIT_OK })
}

pub fn bound(path: &Path, limits: Limits) -> Result<Outcome> {
    let (mut report, problem) = load("bound", path, limits)?;
    let b = hole_bound(problem.matrix(), problem.limits())?;
    report.field("d_plus_1", b.d_plus_1);
    report.field("m_f", &b.m_f);
    report.field("d_a", &b.d_a);
    report.field("bound", &b.bound);
    let rep = problem.holes_representation()?;
    match certify_infinite(&problem, &rep, &b)? {
        Some(z) => {
            report.field("certificate", &z);
            report.field("certificate_norm", z.norm_inf());
            report.field("verdict", "H infinite");
        }
        None => {
            let all = rep.finite_holes().unwrap_or_default();
            report.field("holes", all.len());
            match max_norm(&all) {
                Some(m) => {
                    report.field("max_hole_norm", &m);
                    report.field("within_bound", m <= b.bound);
                    report.field("verdict", "H finite");
                }
                None => report.field("verdict", "H finite (empty)"),
            }
        }
    }
    report.field("status", "complete");
    Ok(Outcome { report, code: EXIT_OK })
}

pub fn member(path: &Path, words: &[String], limits: Limits) -> Result<Outcome> {
    let (mut report, problem) = load("member", path, limits)?;
    let z = parse_vector(words)?;
    report.field("vector", &z);
    if !problem.in_saturation(&z)? {
        report.field("result", "not in Q_sat");
    } else if let Some(w) = problem.member(&z)? {
        report.field("result", "in Q");
        report.field("witness", &w);
    } else {
        report.field("result", "hole");
    }
    report.field("status", "complete");
    Ok(Outcome { report, code: EXIT_OK })
}

fn cell_label(dims: TransportDims, c: usize) -> String {
    let (i, j, k) = dims.cell(c);
    format!("{} {} {}", i + 1, j + 1, k + 1)
}

fn vlach_report(v: &VlachReport) -> Report {
    let mut report = Report::new("transport");
    report.field("instance", "vlach");
    report.field("dims", v.dims);
    report.field("f", &v.f);
    report.field("z_star", &v.z_star);
    report.list("support", v.support.iter().map(|&c| cell_label(v.dims, c)));
    report.field("support_rank", v.support_rank);
    report.field("f_in_lattice", v.f_in_lattice);
    report.list(
        "off_support_maxima",
        v.off_support_maxima.iter().map(|(c, m)| format!("{}: {m}", cell_label(v.dims, *c))),
    );
    report.list("non_fundamental_columns", v.non_fundamental_columns.iter().map(|&c| cell_label(v.dims, c)));
    report.list(
        "witnesses",
        v.non_hole_witnesses.iter().map(|(c, w)| match w {
            Some(w) => format!("{}: {w}", cell_label(v.dims, *c)),
            None => format!("{}: none", cell_label(v.dims, *c)),
        }),
    );
    report.field("zero_rows_force_support", v.zero_rows_force_support);
    match &v.hole_ideal {
        Some(i) => report.field("hole_ideal_generators", i.generators().len()),
        None => report.field("hole_ideal_generators", "unknown"),
    }
    let c = &v.conclusions;
    report.field("f_is_hole", c.f_is_hole);
    report.field("f_is_fundamental_checked", c.f_is_fundamental_checked);
    report.field("unique_real_solution", c.unique_real_solution);
    report.field("holes_are_f_plus_monoid_a_prime", c.holes_are_f_plus_monoid_a_prime);
    report.list("diagnostics", &v.diagnostics);
    report
}

pub fn transport(args: &TransportArgs, limits: Limits) -> Result<Outcome> {
    if args.vlach {
        let v = verify_vlach(&limits)?;
        let code = if v.conclusions.all() { EXIT_OK } else { 1 };
        let mut report = vlach_report(&v);
        report.field("status", "complete");
        return Ok(Outcome { report, code });
    }
    let given = match &args.dims {
        Some(d) => Some(TransportDims::new(d[0], d[1], d[2])?),
        None => None,
    };
    let mut report = Report::new("transport");
    match (&args.margins, given) {
        (Some(path), given) => {
            let m = read_margins(path)?;
            let dims = m.dims()?;
            if let Some(g) = given {
                if g != dims {
                    return Err(monoid_holes::Error::InvalidInput(format!("margins have shape {dims}, not {g}")).into());
                }
            }
            report.field("dims", dims);
            let f = m.stacked();
            report.field("margins", &f);
            report.field("consistent_totals", m.is_consistent());
            match table_feasible(dims, &m, &limits)? {
                Some(table) => {
                    report.field("result", "integer feasible");
                    report.field("table", &table);
                }
                None if in_cone(&transportation_matrix(dims), &f) => {
                    report.field("result", "integer infeasible, real feasible");
                }
                None => report.field("result", "real infeasible"),
            }
        }
        (None, Some(dims)) => {
            report.field("dims", dims);
            report.matrix("matrix", &transportation_matrix(dims));
        }
        (None, None) => unreachable!("clap requires one of --dims, --margins, --vlach"),
    }
    report.field("status", "complete");
    Ok(Outcome { report, code: EXIT_OK })
}
