use std::collections::BTreeSet;

use clap::{Subcommand, ValueEnum};
use primcyc::algebra::text::format_field_poly;
use primcyc::algebra::{prime_power, Field, FieldSpec, Poly};
use primcyc::census::{inclusion_exclusion_check, proportion_bruteforce_with, proportion_exact, verify_tail_bounds};
use primcyc::cycleindex::{
    centralizer_bruteforce_guarded, centralizer_order, icycle_lhs_guarded, icycle_rhs, partitions_of,
    VariableAssignment, MATRIX_GUARD,
};
use primcyc::rational::{int, to_decimal, to_fraction_string};
use primcyc::series::{pcbi_series, SeriesParams};
use primcyc::Error;
use serde::Serialize;

use crate::{Context, Failure, Format};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    AllOnes,
    Unipotent,
    Pcbi,
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Enumerated cycle index against the product formula, coefficients 0..=n.
    CycleIndex {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Assignment::AllOnes)]
        assignment: Assignment,
        /// Extension degree for `pcbi`; the algebra is then `M(n, q^b)`.
        #[arg(long, default_value_t = 2)]
        b: u32,
    },
    /// Centralizer formula against a commutant scan.
    Centralizer {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        max_dim: u32,
    },
    /// Both primary-cyclicity tests over all of M(c, q^b).
    Criterion {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// Alternating sum of the pcbI counts against the pcb count.
    InclusionExclusion {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// Consecutive-difference and distance-to-limit bounds for c_lo..=c_hi.
    Tail {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c_lo: u32,
        #[arg(long)]
        c_hi: u32,
    },
    /// Every suite at small default parameters.
    All,
}

#[derive(Serialize)]
struct Line {
    suite: &'static str,
    check: String,
    result: &'static str,
    detail: String,
}

struct Reporter {
    format: Format,
    lines: Vec<Line>,
    failed: bool,
}

impl Reporter {
    fn push(&mut self, suite: &'static str, check: String, pass: bool, detail: String) {
        self.failed |= !pass;
        self.emit(Line { suite, check, result: if pass { "PASS" } else { "FAIL" }, detail });
    }

    fn info(&mut self, suite: &'static str, check: String, detail: String) {
        self.emit(Line { suite, check, result: "INFO", detail });
    }

    fn emit(&mut self, line: Line) {
        if self.format == Format::Text {
            println!("{} {} {}: {}", line.result, line.suite, line.check, line.detail);
        }
        self.lines.push(line);
    }

    fn finish(self) -> Result<(), Failure> {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.lines).expect("serializable")),
            Format::Csv => {
                println!("suite,check,result,detail");
                for l in &self.lines {
                    println!("{},\"{}\",{},\"{}\"", l.suite, l.check, l.result, l.detail.replace('"', "'"));
                }
            }
            Format::Text => {}
        }
        if self.failed {
            Err(Failure::Verify)
        } else {
            Ok(())
        }
    }
}

fn field(q: u64) -> primcyc::Result<Field> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Field::new(p as u32, e)
}

pub fn run(ctx: &Context, suite: Suite) -> Result<(), Failure> {
    let mut rep = Reporter { format: ctx.format, lines: Vec::new(), failed: false };
    match suite {
        Suite::CycleIndex { q, n, assignment, b } => cycle_index(ctx, &mut rep, q, n, assignment, b)?,
        Suite::Centralizer { q, max_dim } => centralizer(ctx, &mut rep, q, max_dim)?,
        Suite::Criterion { q, b, c } => criterion(ctx, &mut rep, q, b, c)?,
        Suite::InclusionExclusion { q, b, c } => incl_excl(ctx, &mut rep, q, b, c)?,
        Suite::Tail { q, b, c_lo, c_hi } => tail(&mut rep, q, b, c_lo, c_hi)?,
        Suite::All => {
            for a in [Assignment::AllOnes, Assignment::Unipotent] {
                cycle_index(ctx, &mut rep, 2, 2, a, 2)?;
            }
            cycle_index(ctx, &mut rep, 2, 2, Assignment::Pcbi, 2)?;
            centralizer(ctx, &mut rep, 2, 4)?;
            centralizer(ctx, &mut rep, 3, 3)?;
            for (q, b, c) in [(2, 2, 2), (3, 2, 1), (2, 3, 1)] {
                criterion(ctx, &mut rep, q, b, c)?;
            }
            incl_excl(ctx, &mut rep, 2, 2, 2)?;
            incl_excl(ctx, &mut rep, 3, 2, 1)?;
            tail(&mut rep, 2, 2, 49, 55)?;
        }
    }
    rep.finish()
}

fn matrix_guard(ctx: &Context) -> u128 {
    if ctx.guard_override {
        MATRIX_GUARD << 4
    } else {
        MATRIX_GUARD
    }
}

fn cycle_index(ctx: &Context, rep: &mut Reporter, q: u64, n: u32, a: Assignment, b: u32) -> Result<(), Failure> {
    let name = format!("{a:?}").to_lowercase();
    let (alg, set, x, scale) = match a {
        Assignment::AllOnes => (field(q)?, BTreeSet::new(), VariableAssignment::all_ones(), None),
        Assignment::Unipotent => {
            let f = field(q)?;
            let x = VariableAssignment::unipotent(&f);
            (f, BTreeSet::new(), x, None)
        }
        Assignment::Pcbi => {
            let spec = FieldSpec::new(q, b)?;
            let params = SeriesParams::new(q, b)?;
            let fpoly = ctx.cache.irreducibles(spec.base(), b)?.remove(0);
            let split = spec.split_over_extension(&fpoly)?;
            let (g, rest) = split.split_first().expect("b >= 2 linear factors");
            let set: BTreeSet<Poly> = [g.clone()].into();
            let x = VariableAssignment::pcbi(std::slice::from_ref(g), rest);
            (spec.ext().clone(), set, x, Some((params, int(b as i64))))
        }
    };
    let rhs = icycle_rhs(&alg, n as usize, &set, &x)?;
    for m in 0..=n {
        let lhs = icycle_lhs_guarded(&alg, m, &set, &x, matrix_guard(ctx))?;
        let r = rhs.coeff(m as usize);
        rep.push(
            "cycle-index",
            format!("{name} q={} n={m}", alg.size()),
            &lhs == r,
            format!("lhs = {}, rhs = {}", to_fraction_string(&lhs), to_fraction_string(r)),
        );
        if let Some((params, bk)) = &scale {
            let s = pcbi_series(1, params, m as usize)?;
            let series = s.coeff(m as usize);
            rep.push(
                "cycle-index",
                format!("pcbi count q={q} b={b} n={m}"),
                &(&lhs * bk) == series,
                format!("b * lhs = {}, PCBI_1 = {}", to_fraction_string(&(&lhs * bk)), to_fraction_string(series)),
            );
        }
    }
    Ok(())
}

fn centralizer(ctx: &Context, rep: &mut Reporter, q: u64, max_dim: u32) -> Result<(), Failure> {
    let f = field(q)?;
    for d in 1..=max_dim {
        for h in ctx.cache.irreducibles(&f, d)? {
            for size in 1..=max_dim / d {
                for l in partitions_of(size)? {
                    let formula = centralizer_order(&l, d, q);
                    let scan = centralizer_bruteforce_guarded(&f, &l, &h, matrix_guard(ctx))?;
                    rep.push(
                        "centralizer",
                        format!("q={q} h={} λ={l}", format_field_poly(&f, &h, "z")),
                        formula == scan.into(),
                        format!("formula = {formula}, scan = {scan}"),
                    );
                }
            }
        }
    }
    Ok(())
}

fn criterion(ctx: &Context, rep: &mut Reporter, q: u64, b: u32, c: u32) -> Result<(), Failure> {
    let spec = FieldSpec::new(q, b)?;
    let irr = ctx.cache.irreducibles(spec.base(), b)?;
    let r = proportion_bruteforce_with(q, b, c, ctx.brute_guard(), irr)?;
    rep.push(
        "criterion",
        format!("(q,b,c)=({q},{b},{c})"),
        r.disagreements == 0 && r.f_hits == r.k_hits,
        format!("{} matrices, K hits {}, F hits {}, disagreeing pairs {}", r.total, r.k_hits, r.f_hits, r.disagreements),
    );
    let exact = proportion_exact(q, b, c)?;
    rep.push(
        "criterion",
        format!("series (q,b,c)=({q},{b},{c})"),
        exact == r.proportion(),
        format!("enumeration = {}, series = {}", to_fraction_string(&r.proportion()), to_fraction_string(&exact)),
    );
    Ok(())
}

fn incl_excl(ctx: &Context, rep: &mut Reporter, q: u64, b: u32, c: u32) -> Result<(), Failure> {
    let r = inclusion_exclusion_check(q, b, c, ctx.brute_guard())?;
    rep.push(
        "inclusion-exclusion",
        format!("(q,b,c)=({q},{b},{c})"),
        r.holds,
        format!("N = {}, |pcb| = {}, |pcbI| by size = {:?}, alternating sum = {}", r.n, r.pcb, r.pcbi, r.alternating_sum),
    );
    rep.push(
        "inclusion-exclusion",
        format!("size independence (q,b,c)=({q},{b},{c})"),
        r.size_independent,
        if r.n <= 3 { "all subsets compared".into() } else { "first subset of each size only".into() },
    );
    rep.push(
        "inclusion-exclusion",
        format!("series (q,b,c)=({q},{b},{c})"),
        r.series_agrees,
        "|pcbI| = |GL(c,q^b)| [u^c] PCBI_i".into(),
    );
    Ok(())
}

fn tail(rep: &mut Reporter, q: u64, b: u32, c_lo: u32, c_hi: u32) -> Result<(), Failure> {
    let r = verify_tail_bounds(q, b, c_lo, c_hi)?;
    let k = &r.constants;
    rep.info(
        "tail",
        format!("constants (q,b)=({q},{b})"),
        format!(
            "a_J = {}, k = {}, M = {}, limit width = {}",
            to_decimal(&k.a_j, 8),
            to_decimal(&k.k, 8),
            to_decimal(&k.m_threshold, 8),
            to_decimal(&k.limit_interval.width(), 3)
        ),
    );
    for row in &r.rows {
        rep.push(
            "tail",
            format!("difference c={}", row.c),
            row.difference_ok,
            format!(
                "|P(c+1)-P(c)| = {} < {} (margin {})",
                to_decimal(&row.difference, 6),
                to_decimal(&row.difference_bound, 6),
                to_decimal(&row.difference_margin(), 6)
            ),
        );
        rep.push(
            "tail",
            format!("limit distance c={}", row.c),
            row.distance_ok,
            format!(
                "|P(c)-P(inf)| <= {} <= {} (margin {})",
                to_decimal(&row.distance, 6),
                to_decimal(&row.distance_bound, 6),
                to_decimal(&row.distance_margin(), 6)
            ),
        );
    }
    let held = r.below_threshold.iter().filter(|(_, ok)| *ok).count();
    rep.info(
        "tail",
        format!("below threshold c<{c_lo}"),
        format!("difference bound holds for {held} of {} smaller c (not claimed)", r.below_threshold.len()),
    );
    Ok(())
}
