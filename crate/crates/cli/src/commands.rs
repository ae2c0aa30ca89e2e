use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use floorsum_core::analytic::{
    mho_sum_with, prop_bound_envelope, psi, series_constant, theta_exponent, vaaler_approx,
    MainTermCase, MainTermSpec,
};
use floorsum_core::summatory::{
    mertens, totient_summatory, walfisz_ratio, SummatoryCache, SummatoryKind,
};
use floorsum_core::verify::{
    fit_error_exponent_with, floor_power_asymptotic_check, hyperbola_decomposition_check,
    oracle_check, sandwich_check, vaaler_check,
};
use floorsum_core::{Error, FloorSum, Limits, SumParams};
use serde_json::Value;

use crate::output::{float, sum_value, Format, Payload};
use crate::{
    Cli, Command, ComputeArgs, ConstantArgs, Failure, FitArgs, MaintermArgs, Method, MhoArgs,
    PsiCheckArgs, Suite, SummatoryArgs, SummatoryKindArg, VerifyArgs,
};

pub fn run(cli: &Cli, limits: &Limits) -> Result<(), Failure> {
    let ctx = Context { cli, limits };
    match &cli.command {
        Command::Compute(a) => ctx.compute(a),
        Command::Fit(a) => ctx.fit(a),
        Command::Verify(a) => ctx.verify(a),
        Command::Constant(a) => ctx.constant(a),
        Command::Mainterm(a) => ctx.mainterm(a),
        Command::Summatory(a) => ctx.summatory(a),
        Command::PsiCheck(a) => ctx.psi_check(a),
        Command::Mho(a) => ctx.mho(a),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    limits: &'a Limits,
}

impl Context<'_> {
    fn emit(&self, payload: &Payload) -> Result<(), Failure> {
        self.emit_as(payload, self.cli.format)
    }

    fn emit_as(&self, payload: &Payload, format: Format) -> Result<(), Failure> {
        let mut out = io::stdout().lock();
        payload.write(format, &mut out)?;
        out.flush()?;
        Ok(())
    }

    fn seconds(&self, start: Instant) -> Value {
        if self.cli.no_timing {
            float(0.0)
        } else {
            float(start.elapsed().as_secs_f64())
        }
    }

    fn compute(&self, a: &ComputeArgs) -> Result<(), Failure> {
        let params = SumParams::new(a.j, a.k)?;
        let eval = FloorSum::new(*self.limits);
        let start = Instant::now();
        let v = match a.method {
            Method::Naive => eval.naive(&params, a.x),
            Method::Block => eval.block(&params, a.x),
            Method::Hybrid => eval.hybrid(&params, a.x),
        }?;
        let payload = Payload::new()
            .field("j", float(a.j))
            .field("k", float(a.k))
            .field("x", a.x)
            .field("method", format!("{:?}", a.method).to_lowercase())
            .field("mode", if v.is_exact() { "exact" } else { "float" })
            .field("value", sum_value(&v))
            .field("abs_error", float(v.abs_error))
            .field("terms", v.terms)
            .field("seconds", self.seconds(start));
        self.emit(&payload)
    }

    fn fit(&self, a: &FitArgs) -> Result<(), Failure> {
        let params = SumParams::new(a.j, a.k)?;
        // Open the destination first so a bad path fails before the work.
        let file =
            File::create(&a.out).map_err(|e| Failure::Io(format!("{}: {e}", a.out.display())))?;
        let result = fit_error_exponent_with(&params, a.xmin, a.xmax, a.points, self.limits)?;

        let mut csv = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(BufWriter::new(file));
        let io_err = |e: csv::Error| Failure::Io(e.to_string());
        csv.write_record([
            "x",
            "s_value",
            "main",
            "delta",
            "log10_x",
            "log10_abs_delta",
            "seconds",
        ])
        .map_err(io_err)?;
        for s in &result.samples {
            let seconds = if self.cli.no_timing { 0.0 } else { s.seconds };
            let row = [
                Value::from(s.x),
                sum_value(&s.s_value),
                sum_value(&s.main),
                float(s.delta),
                float((s.x as f64).log10()),
                float(s.delta.abs().log10()),
                float(seconds),
            ];
            csv.write_record(row.iter().map(crate::output::cell))
                .map_err(io_err)?;
        }
        csv.flush()?;

        let admitted: Vec<Value> = result.admitted().map(|s| Value::from(s.x)).collect();
        let payload = Payload::new()
            .field("j", float(a.j))
            .field("k", float(a.k))
            .field("xmin", a.xmin)
            .field("xmax", a.xmax)
            .field("points", a.points)
            .field("out", a.out.display().to_string())
            .field("slope", float(result.slope))
            .field("intercept", float(result.intercept))
            .field("r_squared", float(result.r_squared))
            .field("theta_reference", float(result.theta_reference))
            .field("samples", result.samples.len())
            .field("admitted", Value::Array(admitted));
        // The summary is JSON regardless of --format; the CSV holds the table.
        self.emit_as(&payload, Format::Json)
    }

    fn verify(&self, a: &VerifyArgs) -> Result<(), Failure> {
        let (payload, failure) = match a.suite {
            Suite::Oracle => verify_oracle(a)?,
            Suite::Decomposition => verify_decomposition(a)?,
            Suite::Sandwich => verify_sandwich(a)?,
            Suite::Vaaler => verify_vaaler(a)?,
            Suite::Walfisz => verify_walfisz(a)?,
            Suite::Floorpow => verify_floorpow(a)?,
        };
        let payload = payload.field("passed", failure.is_none());
        let format = if a.json {
            Format::Json
        } else {
            self.cli.format
        };
        self.emit_as(&payload, format)?;
        match failure {
            Some(counterexample) => Err(Failure::Verification(counterexample)),
            None => Ok(()),
        }
    }

    fn constant(&self, a: &ConstantArgs) -> Result<(), Failure> {
        let start = Instant::now();
        let v = series_constant(a.c_prime, a.eps)?;
        let payload = Payload::new()
            .field("c_prime", float(a.c_prime))
            .field("eps", float(a.eps))
            .field("value", sum_value(&v))
            .field("abs_error", float(v.abs_error))
            .field("terms", v.terms)
            .field("seconds", self.seconds(start));
        self.emit(&payload)
    }

    fn mainterm(&self, a: &MaintermArgs) -> Result<(), Failure> {
        let params = SumParams::new(a.j, a.k)?;
        let spec = MainTermSpec::new(&params)?;
        let case = match spec.case {
            MainTermCase::Log => "log",
            MainTermCase::Linear => "linear",
            MainTermCase::None => "none",
        };
        let mut payload = Payload::new()
            .field("j", float(a.j))
            .field("k", float(a.k))
            .field("x", a.x)
            .field("case", case);
        if spec.case == MainTermCase::None {
            return Err(Error::Domain(format!(
                "j - k = {} >= 2 has no main term; use `verify --suite sandwich`",
                params.c()
            ))
            .into());
        }
        let v = spec.evaluate(a.x as f64)?;
        let constant = spec
            .constant
            .as_ref()
            .expect("log and linear cases carry a constant");
        payload = payload
            .field("constant", sum_value(constant))
            .field("constant_abs_error", float(constant.abs_error))
            .field("value", sum_value(&v))
            .field("abs_error", float(v.abs_error))
            .field(
                "theta",
                theta_exponent(&params).map(float).unwrap_or(Value::Null),
            );
        self.emit(&payload)
    }

    fn summatory(&self, a: &SummatoryArgs) -> Result<(), Failure> {
        let start = Instant::now();
        let (kind, name) = match a.kind {
            SummatoryKindArg::Phi => (SummatoryKind::Totient, "phi"),
            SummatoryKindArg::Mertens => (SummatoryKind::Mertens, "mertens"),
        };
        let mut cache = SummatoryCache::with_limits(kind, a.n.max(1), self.limits)?;
        let value: Value = match kind {
            SummatoryKind::Totient => totient_summatory(a.n, &mut cache)?.to_string().into(),
            SummatoryKind::Mertens => mertens(a.n, &mut cache)?.into(),
        };
        let payload = Payload::new()
            .field("kind", name)
            .field("n", a.n)
            .field("value", value)
            .field("threshold", cache.threshold())
            .field("memoized", cache.memoized())
            .field("seconds", self.seconds(start));
        self.emit(&payload)
    }

    fn psi_check(&self, a: &PsiCheckArgs) -> Result<(), Failure> {
        let v = vaaler_approx(a.t, a.h)?;
        let p = psi(a.t);
        let error = (p - v.approx).abs();
        let payload = Payload::new()
            .field("t", float(a.t))
            .field("H", a.h)
            .field("psi", float(p))
            .field("approx", float(v.approx))
            .field("error", float(error))
            .field("rh_bound", float(v.rh_bound))
            .field(
                "within_bound",
                error <= v.rh_bound + floorsum_core::verify::VAALER_TOLERANCE,
            );
        self.emit(&payload)
    }

    fn mho(&self, a: &MhoArgs) -> Result<(), Failure> {
        let params = SumParams::new(a.j, a.k)?;
        let ws: Vec<u64> = match (a.w, a.sweep) {
            (Some(w), None) => vec![w],
            (None, Some((lo, hi))) => (lo..=hi).map(|e| 1u64 << e).collect(),
            _ => return Err(Error::Domain("give exactly one of --w or --sweep".into()).into()),
        };
        let mut rows = Vec::with_capacity(ws.len());
        for w in ws {
            let mho = mho_sum_with(a.x, w, a.delta, &params, self.limits)?;
            let env = prop_bound_envelope(a.x, w, &params, a.eps)?;
            let ratio = mho.to_f64().abs() / env.value;
            rows.push(vec![
                Value::from(w),
                sum_value(&mho),
                float(mho.abs_error),
                float(env.value),
                format!("{:?}", env.branch).to_lowercase().into(),
                float(ratio),
            ]);
        }
        let max_ratio = rows
            .iter()
            .filter_map(|r| r[5].as_f64())
            .fold(0.0, f64::max);
        let payload = Payload::new()
            .field("x", a.x)
            .field("j", float(a.j))
            .field("k", float(a.k))
            .field("delta", a.delta)
            .field("eps", float(a.eps))
            .field("max_ratio", float(max_ratio))
            .table(
                &["w", "mho", "abs_error", "envelope", "branch", "ratio"],
                rows,
            );
        self.emit(&payload)
    }
}

type SuiteOutcome = Result<(Payload, Option<String>), Failure>;

fn verify_oracle(a: &VerifyArgs) -> SuiteOutcome {
    let params = SumParams::new(a.j, a.k)?;
    let x_max = a.xmax.unwrap_or(1000);
    let r = oracle_check(&params, x_max)?;
    let failure = r.discrepancy.as_ref().map(|d| {
        format!(
            "x={}: naive={} block={} hybrid={}",
            d.x, d.naive.value, d.block.value, d.hybrid.value
        )
    });
    let payload = Payload::new()
        .field("suite", "oracle")
        .field("j", float(a.j))
        .field("k", float(a.k))
        .field("xmax", x_max)
        .field("checked", r.checked)
        .field(
            "counterexample",
            failure.clone().map_or(Value::Null, Value::from),
        );
    Ok((payload, failure))
}

fn verify_decomposition(a: &VerifyArgs) -> SuiteOutcome {
    let x =
        a.x.ok_or_else(|| Error::Domain("decomposition needs --x".into()))?;
    let z = a.z.unwrap_or_else(|| (x as f64).cbrt());
    let r = hyperbola_decomposition_check(x, z)?;
    let failure = (!r.passed()).then(|| {
        format!(
            "sigma1 + sigma2 - sigma3 = {}, direct = {}, summatory = {}",
            r.sigma1 + r.sigma2 - r.sigma3,
            r.direct,
            r.summatory
        )
    });
    let payload = Payload::new()
        .field("suite", "decomposition")
        .field("x", x)
        .field("z", float(z))
        .field("a", r.a)
        .field("b", r.b)
        .field("sigma1", r.sigma1.to_string())
        .field("sigma2", r.sigma2.to_string())
        .field("sigma3", r.sigma3.to_string())
        .field("direct", r.direct.to_string())
        .field("summatory", r.summatory.to_string());
    Ok((payload, failure))
}

fn verify_sandwich(a: &VerifyArgs) -> SuiteOutcome {
    let params = match a.c {
        Some(c) => SumParams::new(c, 0.0)?,
        None => SumParams::new(a.j, a.k)?,
    };
    let xs: Vec<u64> = match (a.x, a.xmax) {
        (Some(x), _) => vec![x],
        (None, xmax) => (1..=xmax.unwrap_or(2000)).collect(),
    };
    let mut failure = None;
    let mut last = None;
    for &x in &xs {
        let r = sandwich_check(&params, x)?;
        if !r.passed() {
            failure = Some(format!(
                "x={x}: {} <= {} <= {} fails",
                r.lower, r.s, r.upper
            ));
            last = Some(r);
            break;
        }
        last = Some(r);
    }
    let r = last.ok_or_else(|| Error::Domain("sandwich needs x >= 1".into()))?;
    let payload = Payload::new()
        .field("suite", "sandwich")
        .field("j", float(params.j()))
        .field("k", float(params.k()))
        .field("c", r.c)
        .field("checked", xs.len())
        .field("x", r.x)
        .field("lower", r.lower.to_string())
        .field("s", r.s.to_string())
        .field("upper", r.upper.to_string())
        .field("ratio_to_zeta", float(r.ratio_to_zeta))
        .field("ratio_to_twice_lower", float(r.ratio_to_twice_lower));
    Ok((payload, failure))
}

fn verify_vaaler(a: &VerifyArgs) -> SuiteOutcome {
    let r = vaaler_check(&a.h, a.grid)?;
    let failure = r
        .violation
        .map(|v| format!("H={} t={}: error {} > bound {}", v.h, v.t, v.error, v.bound));
    let payload = Payload::new()
        .field("suite", "vaaler")
        .field("H", r.degrees.clone())
        .field("grid", r.grid)
        .field(
            "worst_ratio",
            Value::Array(r.worst_ratio.iter().map(|w| float(*w)).collect()),
        );
    Ok((payload, failure))
}

fn verify_walfisz(a: &VerifyArgs) -> SuiteOutcome {
    const TOLERANCE: f64 = 1e-4;
    let ratio = walfisz_ratio(a.n)?;
    let deviation = (ratio - 1.0).abs();
    let failure =
        (deviation > TOLERANCE).then(|| format!("|ratio - 1| = {deviation:e} > {TOLERANCE:e}"));
    let payload = Payload::new()
        .field("suite", "walfisz")
        .field("n", a.n)
        .field("ratio", float(ratio))
        .field("deviation", float(deviation))
        .field("tolerance", float(TOLERANCE));
    Ok((payload, failure))
}

/// Relative error of `Σ[x/n]^c ≈ ζ(c)x^c` at each power of ten from
/// `10^3` to `xmax`; it must halve at least once per decade.
fn verify_floorpow(a: &VerifyArgs) -> SuiteOutcome {
    let c = a.c.unwrap_or(2.0);
    let x_max = a.xmax.unwrap_or(1_000_000);
    let mut xs = vec![1000u64];
    while let Some(next) = xs.last().unwrap().checked_mul(10).filter(|&n| n <= x_max) {
        xs.push(next);
    }
    let mut rows = Vec::with_capacity(xs.len());
    let mut failure = None;
    let mut prev: Option<f64> = None;
    for &x in &xs {
        let v = floor_power_asymptotic_check(x, c)?;
        if let Some(p) = prev {
            if failure.is_none() && v * 2.0 > p {
                failure = Some(format!("x={x}: {v:e} is not half of {p:e}"));
            }
        }
        prev = Some(v);
        rows.push(vec![Value::from(x), float(v)]);
    }
    let payload = Payload::new()
        .field("suite", "floorpow")
        .field("c", float(c))
        .field("xmax", x_max)
        .table(&["x", "relative_error"], rows);
    Ok((payload, failure))
}
