use std::time::{Duration, Instant};

use mub_core::gauss::{
    gauss_sum_direct, gauss_sum_fast, gauss_sum_reciprocity, gcd, identity_gauss_sum,
    verify_alpha_modulus, verify_even_gauss, verify_identity_gauss, verify_prop38,
    verify_trace_d, GaussSumSpec,
};
use mub_core::linalg::{build_r, identities};
use mub_core::mub::{
    build_family_capped, check_pair_product_structure, coprime, family_size, is_prime,
    negative_check_even, verify_family, MubFamily, Recipe,
};
use mub_core::sequences::{
    exhaustive_circulant_hadamard, gauss_sequence, is_biunimodular, square_phase_sequence,
    RootSequence,
};
use mub_core::MubError;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{CheckRecord, ReportDocument};
use crate::{
    usage, Cli, Command, Format, GaussMode, IntRange, NegativeProbe, Outcome, SeqKind, Tolerance,
    UsageError, EXIT_FAILED, EXIT_OK,
};

type Records = Result<Vec<CheckRecord>, UsageError>;

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub fn dispatch(cli: &Cli, tol: Tolerance) -> Result<Outcome, UsageError> {
    let start = Instant::now();
    let cap = cli.global.dense_cap;
    let records = match &cli.command {
        Command::Build { dim } => return cmd_build(*dim, cli.global.format, tol, cap),
        Command::Verify {
            dims,
            expect_negative,
        } => cmd_verify(*dims, *expect_negative, tol, cap)?,
        Command::Gauss { mode } => cmd_gauss(mode, tol)?,
        Command::Seq { kind } => cmd_seq(kind, tol)?,
        Command::Search { d, alphabet } => cmd_search(*d, *alphabet, tol)?,
        Command::Sweep { dims } => cmd_sweep(*dims, tol, cap)?,
    };
    let config = json!({
        "global": cli.global,
        "command": cli.command,
        "tolerance": tol.fixed().map_or(json!("1e-9*sqrt(d)"), Value::from),
    });
    let mut doc = ReportDocument::new(config, records);
    doc.total_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if cli.global.no_timings {
        doc.strip_timings();
    }
    let exit_code = if doc.all_passed() { EXIT_OK } else { EXIT_FAILED };
    let body = match cli.global.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv().map_err(|e| usage(e.to_string()))?,
        Format::Text => doc.to_text(),
    };
    Ok(Outcome { body, exit_code })
}

fn dims_from(range: IntRange, min: i64, cap: usize) -> Result<Vec<usize>, UsageError> {
    if range.start < min {
        return Err(usage(format!(
            "dimension range {range} must start at {min} or above"
        )));
    }
    if range.end > cap as i64 {
        return Err(usage(format!(
            "dimension {} exceeds the dense cap {cap} (raise --dense-cap)",
            range.end
        )));
    }
    Ok(range.iter().map(|d| d as usize).collect())
}

fn recipe_anchor(recipe: Recipe) -> &'static str {
    match recipe {
        Recipe::DTwo => "Prop2.1",
        Recipe::Prime => "Thm3.11",
        Recipe::OddComposite => "Thm4.2",
        Recipe::Even => "Cor5.2",
    }
}

// ---------------------------------------------------------------- build

fn cmd_build(dim: i64, format: Format, tol: Tolerance, cap: usize) -> Result<Outcome, UsageError> {
    if dim < 2 {
        return Err(usage(format!("--dim must be at least 2, got {dim}")));
    }
    let d = dim as usize;
    let fam = build_family_capped(d, cap)?;
    let body = match format {
        Format::Json => family_json(&fam, tol.for_dim(d)),
        Format::Csv => family_csv(&fam, tol.for_dim(d)).map_err(|e| usage(e.to_string()))?,
        Format::Text => family_text(&fam, tol.for_dim(d)),
    };
    Ok(Outcome {
        body,
        exit_code: EXIT_OK,
    })
}

/// `d^{-1/2}` for Hadamard bases, 1 otherwise.
fn basis_scale(m: &mub_core::DenseMatrix, tol: f64) -> f64 {
    if m.is_unitary_hadamard(tol).passed {
        (m.dimension() as f64).sqrt().recip()
    } else {
        1.0
    }
}

pub fn family_json(fam: &MubFamily, tol: f64) -> String {
    let bases: Vec<Value> = fam
        .bases
        .iter()
        .map(|b| {
            let scale = basis_scale(&b.matrix, tol);
            let rows: Vec<Value> = b
                .matrix
                .rows()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|z| json!([z.re / scale, z.im / scale]))
                            .collect(),
                    )
                })
                .collect();
            json!({ "label": b.label, "scale": scale, "entries": rows })
        })
        .collect();
    let doc = json!({
        "schema": "mub-family/1",
        "dimension": fam.dimension,
        "recipe": fam.recipe.name(),
        "bases": bases,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("family serializes");
    out.push('\n');
    out
}

fn family_csv(fam: &MubFamily, tol: f64) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["recipe", "basis", "label", "row", "col", "scale", "re", "im"])?;
    for (index, b) in fam.bases.iter().enumerate() {
        let scale = basis_scale(&b.matrix, tol);
        for (j, row) in b.matrix.rows().enumerate() {
            for (k, z) in row.iter().enumerate() {
                w.write_record([
                    fam.recipe.name().to_string(),
                    index.to_string(),
                    b.label.clone(),
                    j.to_string(),
                    k.to_string(),
                    format!("{scale:e}"),
                    format!("{:e}", z.re / scale),
                    format!("{:e}", z.im / scale),
                ])?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn family_text(fam: &MubFamily, tol: f64) -> String {
    let mut out = format!(
        "dimension {} recipe {} ({} bases)\n",
        fam.dimension,
        fam.recipe.name(),
        fam.len()
    );
    for b in &fam.bases {
        let scale = basis_scale(&b.matrix, tol);
        out.push_str(&format!("{} (scale {scale:.6})\n", b.label));
        for row in b.matrix.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re / scale, z.im / scale))
                .collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
    }
    out
}

// ---------------------------------------------------------------- verify

fn cmd_verify(
    dims: IntRange,
    probe: Option<NegativeProbe>,
    tol: Tolerance,
    cap: usize,
) -> Records {
    let dims = dims_from(dims, 2, cap)?;
    if let Some(NegativeProbe::RSquared) = probe {
        if let Some(bad) = dims.iter().find(|&&d| d < 4 || d % 2 != 0) {
            return Err(usage(format!(
                "--expect-negative r-squared needs even dimensions >= 4, got {bad}"
            )));
        }
        return collect(dims.par_iter().map(|&d| Ok(vec![negative_record(d, tol.for_dim(d))?])));
    }
    collect(dims.par_iter().map(|&d| verify_dimension(d, tol.for_dim(d), cap)))
}

fn collect(parts: impl ParallelIterator<Item = Records>) -> Records {
    let parts: Vec<Vec<CheckRecord>> = parts.collect::<Result<_, _>>()?;
    Ok(parts.into_iter().flatten().collect())
}

fn identity_record(
    check: &str,
    anchor: &str,
    inputs: &[(&str, i64)],
    tol: f64,
    f: impl FnOnce() -> mub_core::Result<f64>,
) -> Result<CheckRecord, UsageError> {
    let (dev, elapsed) = timed(f);
    Ok(CheckRecord::new(check, anchor, inputs, dev?, tol).with_elapsed(elapsed))
}

fn negative_record(d: usize, tol: f64) -> Result<CheckRecord, UsageError> {
    let (rec, elapsed) = timed(|| negative_check_even(d, tol));
    let rec = rec?;
    let detail = format!(
        "R² unitary={} circulant_dev={:.1e} hadamard={} offending_entries={}",
        rec.unitary.passed,
        rec.circulant_deviation,
        rec.hadamard.passed,
        rec.offending_entries.len()
    );
    Ok(CheckRecord::new(
        "negative.r_squared_not_hadamard",
        "Rem5.3",
        &[("d", d as i64)],
        rec.hadamard.deviation,
        tol,
    )
    .with_passed(rec.confirmed())
    .with_detail(detail)
    .with_elapsed(elapsed))
}

pub fn verify_dimension(d: usize, tol: f64, cap: usize) -> Records {
    let di = d as i64;
    let mut out = Vec::new();

    let (fam, build_time) = timed(|| build_family_capped(d, cap));
    let fam = fam?;
    let anchor = recipe_anchor(fam.recipe);
    let expected = family_size(d)?;
    out.push(
        CheckRecord::new(
            "family.size",
            anchor,
            &[("d", di)],
            (fam.len() as f64 - expected as f64).abs(),
            0.0,
        )
        .with_detail(format!("{} bases, recipe {}", fam.len(), fam.recipe.name()))
        .with_elapsed(build_time),
    );

    let (report, verify_time) = timed(|| verify_family(&fam, tol));
    for b in &report.bases {
        let inputs = [("d", di), ("basis", b.index as i64)];
        out.push(
            CheckRecord::from_check("family.basis_unitary", "Def1.1", &inputs, b.unitary)
                .with_detail(b.label.clone()),
        );
        if let Some(h) = b.hadamard {
            out.push(
                CheckRecord::from_check("family.basis_hadamard", "Def1.1", &inputs, h)
                    .with_detail(b.label.clone()),
            );
        }
    }
    for p in &report.pairs {
        out.push(
            CheckRecord::from_check(
                "family.pair_unbiased",
                "Def1.8",
                &[("d", di), ("i", p.first as i64), ("j", p.second as i64)],
                p.check,
            )
            .with_detail(format!(
                "{} vs {}: |entries| in [{:.12}, {:.12}]",
                p.first_label, p.second_label, p.min_modulus, p.max_modulus
            )),
        );
    }
    out.push(
        CheckRecord::new(
            "family.unbiased",
            anchor,
            &[("d", di)],
            report.worst_pair_deviation(),
            tol,
        )
        .with_passed(report.passed)
        .with_elapsed(verify_time),
    );

    let dim = [("d", di)];
    out.push(identity_record("linalg.commutation", "Thm1.11(i)", &dim, tol, || identities::commutation(d))?);
    out.push(identity_record("linalg.fourier_diagonalizes_shift", "Thm1.11(ii)", &dim, tol, || {
        identities::fourier_diagonalizes_shift(d)
    })?);
    out.push(identity_record("linalg.fourier_square", "Thm1.11(iii)", &dim, tol, || identities::fourier_square(d))?);
    out.push(identity_record("linalg.fourier_fourth_power", "Thm1.11(iii)", &dim, tol, || {
        identities::fourier_fourth_power(d)
    })?);
    out.push(identity_record("linalg.rotation_commutes_shift", "Def3.1", &dim, tol, || {
        identities::rotation_commutes_with_shift(d)
    })?);
    out.push(identity_record("linalg.rotation_diagonalizes_vu", "Def3.1", &dim, tol, || {
        identities::rotation_diagonalizes_shift_clock(d)
    })?);
    out.extend(circulant_timing_records(d, tol)?);

    if d % 2 == 1 {
        out.push(identity_record("linalg.rotation_conjugates_clock", "Eq.diag", &dim, tol, || {
            identities::rotation_conjugates_clock(d)
        })?);
        out.push(identity_record("linalg.rotation_factorization", "Thm3.5(i)", &dim, tol, || {
            identities::rotation_factorization(d)
        })?);
        out.push(CheckRecord::from_check(
            "linalg.alpha_modulus",
            "Thm3.5(i)",
            &dim,
            verify_alpha_modulus(di, tol)?,
        ));
        out.push(identity_record("linalg.rotation_period", "Thm3.5(ii)", &dim, tol, || {
            identities::rotation_period(d)
        })?);
        let exact = identities::rotation_exponent_identity(d)?;
        out.push(CheckRecord::new(
            "linalg.rotation_exponent_identity",
            "Eq.elemmatrix",
            &dim,
            if exact { 0.0 } else { 1.0 },
            0.0,
        ));
    }
    if d >= 3 && is_prime(d) {
        for k in 0..=d as u32 {
            out.push(identity_record(
                "linalg.rotation_power_conjugates_clock",
                "Thm3.5(iii)",
                &[("d", di), ("k", k as i64)],
                tol,
                || identities::rotation_power_conjugates_clock(d, k),
            )?);
        }
        for k in 0..di {
            out.push(identity_record(
                "linalg.pk_from_rotation",
                "Thm3.6",
                &[("d", di), ("k", k)],
                tol,
                || identities::pk_from_rotation(d, k, tol),
            )?);
        }
        for k in 2..d {
            let (s, elapsed) = timed(|| check_pair_product_structure(d, 1, k, tol));
            let s = s?;
            out.push(
                CheckRecord::from_check(
                    "mub.pair_structure",
                    "Thm3.11",
                    &[("d", di), ("k_prime", 1), ("k", k as i64)],
                    s.rotation_pair.and(s.fourier_rotation),
                )
                .with_elapsed(elapsed),
            );
        }
    }
    if d % 2 == 0 {
        let (check, elapsed) = timed(|| -> mub_core::Result<_> {
            let f = mub_core::linalg::build_fourier(d)?;
            Ok(f.adjoint_multiply(&build_r(d)?.to_dense())?.is_unitary_hadamard(tol))
        });
        out.push(
            CheckRecord::from_check("linalg.fourier_rotation_hadamard", "Prop5.1", &dim, check?)
                .with_elapsed(elapsed),
        );
        if d >= 4 {
            out.push(negative_record(d, tol)?);
        }
    }
    Ok(out)
}

/// `R·R` through the circulant product and through the dense product. Both
/// records carry their own wall-clock time.
fn circulant_timing_records(d: usize, tol: f64) -> Records {
    let r = build_r(d)?;
    let dense_r = r.to_dense();
    let (fast, fast_time) = timed(|| r.multiply(&r));
    let (slow, slow_time) = timed(|| dense_r.multiply(&dense_r));
    let agreement = fast?.to_dense().max_abs_diff(&slow?)?;
    let dim = [("d", d as i64)];
    Ok(vec![
        CheckRecord::new("perf.rotation_square_circulant", "Prop1.3(i)", &dim, agreement, tol)
            .with_elapsed(fast_time),
        CheckRecord::new("perf.rotation_square_dense", "Prop1.3(i)", &dim, agreement, tol)
            .with_elapsed(slow_time),
    ])
}

// ---------------------------------------------------------------- gauss

fn odd_dims(range: IntRange) -> Result<Vec<i64>, UsageError> {
    let dims: Vec<i64> = range.iter().collect();
    if range.start < 3 {
        return Err(usage(format!("odd dimensions start at 3, got range {range}")));
    }
    Ok(dims.into_iter().filter(|d| d % 2 == 1).collect())
}

fn multipliers(
    d: i64,
    explicit: Option<IntRange>,
    allow_noncoprime: bool,
    name: &str,
) -> Result<Vec<i64>, UsageError> {
    match explicit {
        None => Ok((1..d).filter(|&l| gcd(l, d) == 1).collect()),
        Some(range) => {
            if !allow_noncoprime {
                if let Some(bad) = range.iter().find(|&l| gcd(l, d) != 1) {
                    return Err(usage(format!(
                        "{name}={bad} is not coprime with d={d} (pass --allow-noncoprime to probe)"
                    )));
                }
            }
            Ok(range.iter().collect())
        }
    }
}

fn cmd_gauss(mode: &GaussMode, tol: Tolerance) -> Records {
    match mode {
        GaussMode::Identity {
            d,
            l,
            allow_noncoprime,
        } => {
            let dims = odd_dims(*d)?;
            let plan = dims
                .iter()
                .map(|&d| Ok((d, multipliers(d, *l, *allow_noncoprime, "l")?)))
                .collect::<Result<Vec<_>, UsageError>>()?;
            collect(plan.into_par_iter().map(|(d, ls)| {
                let t = tol.for_dim(d as usize);
                let mut out = Vec::new();
                for l in ls {
                    for j in 0..d {
                        let inputs = [("d", d), ("l", l), ("j", j)];
                        let (rec, elapsed) = timed(|| -> Result<CheckRecord, UsageError> {
                            if gcd(l, d) == 1 {
                                Ok(CheckRecord::from_check(
                                    "gauss.identity",
                                    "Eq.gauss",
                                    &inputs,
                                    verify_identity_gauss(d, l, j, t)?,
                                ))
                            } else {
                                let sum = identity_gauss_sum(d, l, j)?;
                                let dev = (sum.norm() - (d as f64).sqrt()).abs();
                                Ok(CheckRecord::new("gauss.identity_probe", "Eq.gauss", &inputs, dev, t)
                                    .with_passed(true)
                                    .with_detail(format!(
                                        "probe only: gcd(l,d)={}, |sum|={:.6}",
                                        gcd(l, d),
                                        sum.norm()
                                    )))
                            }
                        });
                        out.push(rec?.with_elapsed(elapsed));
                    }
                }
                Ok(out)
            }))
        }
        GaussMode::Reciprocity { a, d, b } => {
            if d.start < 1 {
                return Err(usage(format!("Gauss sum modulus must be >= 1, got range {d}")));
            }
            let mut triples = Vec::new();
            for a in a.iter().filter(|&a| a != 0) {
                for d in d.iter() {
                    let bs = b.unwrap_or(IntRange {
                        start: -2 * d,
                        end: 2 * d,
                    });
                    for b in bs.iter() {
                        let spec = GaussSumSpec::new(a, b, d)?;
                        if spec.reciprocity_applies() {
                            triples.push(spec);
                        }
                    }
                }
            }
            collect(triples.into_par_iter().map(|s| {
                let t = tol.for_dim(s.d as usize);
                let inputs = [("a", s.a), ("b", s.b), ("d", s.d)];
                let (values, elapsed) = timed(|| -> mub_core::Result<_> {
                    Ok((gauss_sum_direct(s)?, gauss_sum_reciprocity(s)?, gauss_sum_fast(s)?))
                });
                let (direct, one_step, fast) = values?;
                Ok(vec![
                    CheckRecord::new("gauss.reciprocity", "Prop3.8(ii)", &inputs, (one_step - direct).norm(), t)
                        .with_elapsed(elapsed),
                    CheckRecord::new("gauss.reciprocity_fast", "Prop3.8(ii)", &inputs, (fast - direct).norm(), t),
                ])
            }))
        }
        GaussMode::Even { d } => {
            let dims: Vec<i64> = d.iter().collect();
            if let Some(bad) = dims.iter().find(|&&d| d < 2) {
                return Err(usage(format!("even dimensions start at 2, got {bad}")));
            }
            collect(dims.into_par_iter().filter(|d| d % 2 == 0).map(|d| {
                let (check, elapsed) = timed(|| verify_even_gauss(d, tol.for_dim(d as usize)));
                Ok(vec![CheckRecord::from_check("gauss.even", "Cor5.2(ii)", &[("d", d)], check?)
                    .with_elapsed(elapsed)])
            }))
        }
        GaussMode::TraceD {
            d,
            k,
            allow_noncoprime,
        } => {
            let dims = odd_dims(*d)?;
            let plan = dims
                .iter()
                .map(|&d| Ok((d, multipliers(d, *k, *allow_noncoprime, "k")?)))
                .collect::<Result<Vec<_>, UsageError>>()?;
            collect(plan.into_par_iter().map(|(d, ks)| {
                let t = tol.for_dim(d as usize);
                ks.into_iter()
                    .map(|k| {
                        let inputs = [("d", d), ("k", k)];
                        if gcd(k, d) != 1 {
                            let table = mub_core::RootTable::new(d)?;
                            let trace = mub_core::linalg::build_d(d as usize)?.power(k).trace(&table)?;
                            return Ok(CheckRecord::new(
                                "gauss.trace_d_probe",
                                "Prop3.3(iii)",
                                &inputs,
                                (trace.norm() - (d as f64).sqrt()).abs(),
                                t,
                            )
                            .with_passed(true)
                            .with_detail(format!("probe only: |Tr D^k|={:.6}", trace.norm())));
                        }
                        let (check, elapsed) = timed(|| verify_trace_d(d, k, t));
                        Ok(CheckRecord::from_check("gauss.trace_d", "Prop3.3(iii)", &inputs, check?)
                            .with_elapsed(elapsed))
                    })
                    .collect()
            }))
        }
        GaussMode::Prop38 { d, k } => {
            let dims: Vec<i64> = d.iter().collect();
            if let Some(bad) = dims.iter().find(|&&d| d < 3 || !is_prime(d as usize)) {
                return Err(usage(format!("prop38 needs odd prime dimensions, got {bad}")));
            }
            collect(dims.into_par_iter().map(|d| {
                let t = tol.for_dim(d as usize);
                let ks = k.unwrap_or(IntRange { start: 1, end: d - 1 });
                if ks.start < 1 || ks.end >= d {
                    return Err(usage(format!("k must lie in 1..{} for d={d}", d - 1)));
                }
                let mut out = Vec::new();
                for k in ks.iter() {
                    for m in (1 - d)..d {
                        let inputs = [("d", d), ("k", k), ("m", m)];
                        let (pair, elapsed) = timed(|| verify_prop38(d, k, m, t));
                        let pair = pair?;
                        out.push(
                            CheckRecord::from_check("gauss.prop38_direct", "Prop3.8(i)", &inputs, pair.direct)
                                .with_elapsed(elapsed),
                        );
                        out.push(CheckRecord::from_check(
                            "gauss.prop38_reciprocal",
                            "Prop3.8(ii)",
                            &inputs,
                            pair.reciprocal,
                        ));
                    }
                }
                Ok(out)
            }))
        }
    }
}

// ---------------------------------------------------------------- seq / search

fn gauss_sequence_record(d: usize, k: i64, tol: f64) -> Result<CheckRecord, UsageError> {
    let (report, elapsed) = timed(|| gauss_sequence(d, k).map(|g| is_biunimodular(&g, tol)));
    let report = report?;
    let expected = coprime(k, d);
    let anchor = if is_prime(d) { "Cor3.9" } else { "Prop4.1" };
    let min = report.transform_moduli.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = report.transform_moduli.iter().cloned().fold(0.0, f64::max);
    let verdict = if report.passed {
        "bi-unimodular".to_string()
    } else {
        format!("not bi-unimodular, |ĉ| in [{min:.6}, {max:.6}]")
    };
    let expectation = if expected { "expected" } else { "expected not" };
    Ok(CheckRecord::new(
        "seq.gauss_biunimodular",
        anchor,
        &[("d", d as i64), ("k", k)],
        report.deviation(),
        tol,
    )
    .with_passed(report.passed == expected)
    .with_detail(format!("{verdict} ({expectation} bi-unimodular, gcd={})", gcd(k, d as i64)))
    .with_elapsed(elapsed))
}

fn square_sequence_record(d: usize, tol: f64) -> Result<CheckRecord, UsageError> {
    let (report, elapsed) = timed(|| square_phase_sequence(d).map(|s| is_biunimodular(&s, tol)));
    let report = report?;
    Ok(CheckRecord::new(
        "seq.square_biunimodular",
        "Prop5.1",
        &[("d", d as i64)],
        report.deviation(),
        tol,
    )
    .with_passed(report.passed)
    .with_elapsed(elapsed))
}

fn cmd_seq(kind: &SeqKind, tol: Tolerance) -> Records {
    match kind {
        SeqKind::Gauss { d, k } => {
            if *d < 3 || d % 2 == 0 {
                return Err(usage(format!("Gauss sequences need odd d >= 3, got {d}")));
            }
            collect(
                k.iter()
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|k| Ok(vec![gauss_sequence_record(*d, k, tol.for_dim(*d))?])),
            )
        }
        SeqKind::Square { d } => {
            if *d < 2 || d % 2 != 0 {
                return Err(usage(format!("the square-phase sequence needs even d, got {d}")));
            }
            Ok(vec![square_sequence_record(*d, tol.for_dim(*d))?])
        }
    }
}

fn cmd_search(d: usize, m: usize, tol: Tolerance) -> Records {
    let t = tol.for_dim(d);
    let (hits, elapsed) = timed(|| exhaustive_circulant_hadamard(d, m, t));
    let hits = match hits {
        Err(e @ MubError::SearchTooLarge { .. }) => return Err(e.into()),
        other => other?,
    };
    let mut orbits: Vec<RootSequence> = hits.iter().map(RootSequence::canonical).collect();
    orbits.sort();
    orbits.dedup();
    let (di, mi) = (d as i64, m as i64);
    let mut out = vec![CheckRecord::new("search.hits", "Prop1.7", &[("d", di), ("m", mi)], 0.0, t)
        .with_detail(format!("{} sequences in {} orbits", hits.len(), orbits.len()))
        .with_elapsed(elapsed)];
    for (index, orbit) in orbits.iter().enumerate() {
        out.push(
            CheckRecord::new(
                "search.orbit",
                "Prop1.7",
                &[("d", di), ("m", mi), ("orbit", index as i64)],
                0.0,
                t,
            )
            .with_detail(format!("canonical exponents {:?} (entries exp(2iπ e/{m}))", orbit.exponents)),
        );
    }

    // expected members: Gauss sequences for odd d, half-power squares for even d
    let mut expected: Vec<(i64, &str, &str, RootSequence)> = Vec::new();
    if d >= 3 && d % 2 == 1 && m % d == 0 {
        for k in (1..di).filter(|&k| coprime(k, d)) {
            let g = gauss_sequence(d, k)?;
            if let Some(rs) = RootSequence::from_sequence(&g, m, 1e-9) {
                expected.push((k, "search.gauss_orbit", "Prop1.10", rs));
            }
        }
    } else if d % 2 == 0 && m % (2 * d) == 0 {
        let s = square_phase_sequence(d)?;
        if let Some(rs) = RootSequence::from_sequence(&s, m, 1e-9) {
            let conj = RootSequence {
                order: m,
                exponents: rs.exponents.iter().map(|&e| (m - e) % m).collect(),
            };
            expected.push((-1, "search.square_orbit", "Prop5.1", rs));
            expected.push((1, "search.square_orbit", "Prop5.1", conj));
        }
    }
    for (k, check, anchor, rs) in expected {
        let found = orbits.contains(&rs.canonical());
        out.push(
            CheckRecord::new(check, anchor, &[("d", di), ("m", mi), ("k", k)], 0.0, t)
                .with_passed(found)
                .with_detail(format!(
                    "exponents {:?} {}",
                    rs.exponents,
                    if found { "found" } else { "missing" }
                )),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------- sweep

fn cmd_sweep(dims: IntRange, tol: Tolerance, cap: usize) -> Records {
    let dims = dims_from(dims, 2, cap)?;
    collect(dims.par_iter().map(|&d| {
        let t = tol.for_dim(d);
        let di = d as i64;
        let mut out = verify_dimension(d, t, cap)?;
        if d % 2 == 1 {
            for l in (1..di).filter(|&l| coprime(l, d)) {
                for j in 0..di {
                    out.push(CheckRecord::from_check(
                        "gauss.identity",
                        "Eq.gauss",
                        &[("d", di), ("l", l), ("j", j)],
                        verify_identity_gauss(di, l, j, t)?,
                    ));
                }
                out.push(CheckRecord::from_check(
                    "gauss.trace_d",
                    "Prop3.3(iii)",
                    &[("d", di), ("k", l)],
                    verify_trace_d(di, l, t)?,
                ));
            }
            for k in 1..di {
                out.push(gauss_sequence_record(d, k, t)?);
            }
        } else {
            out.push(CheckRecord::from_check(
                "gauss.even",
                "Cor5.2(ii)",
                &[("d", di)],
                verify_even_gauss(di, t)?,
            ));
            out.push(square_sequence_record(d, t)?);
        }
        Ok(out)
    }))
}
