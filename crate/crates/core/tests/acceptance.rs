//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use freeboundary::cli::{run, RunOptions};
use freeboundary::fbprocess::*;
use freeboundary::lattice::{sampler_tv_verify, NumericParams, SamplerConfig};
use freeboundary::qpartition::{cd_equiv_check, partitions_up_to, Partition};
use freeboundary::series::{kernel_property_suite, Series};
use freeboundary::VerificationReport;

type Outcome = Result<(bool, String), String>;

fn summarize(rep: &VerificationReport) -> String {
    format!("{:?}, {} cases, {} ms", rep.status, rep.cases(), rep.runtime_ms)
}

fn registered(name: &str) -> Outcome {
    let rep = run(name, &RunOptions::default()).map_err(|e| e.to_string())?;
    Ok((rep.passed(), summarize(&rep)))
}

fn within(ok: bool, detail: String, started: Instant, budget: Duration) -> Outcome {
    let took = started.elapsed();
    Ok((ok && took <= budget, format!("{detail}; {took:.2?} of {budget:?}")))
}

fn z1_closed_form() -> Outcome {
    let t0 = Instant::now();
    let spec = ProcessSpec::new(1, Caps::new(3, 1, 4));
    let r = spec.context().ring;
    let v = |s: &str| Series::var(&r, s).map_err(|e| e.to_string());
    let (a, b, c, d, x, q, t) = (v("a")?, v("b")?, v("c")?, v("d")?, v("x1")?, v("q")?, v("t")?);
    let one = Series::one(&r);
    let (ab, cd) = (&a * &b, &c * &d);
    let even = &one + &ab + &a * &c + &a * &d + &b * &c + &b * &d + cd.clone() + &ab * &cd;
    let odd = &a + &b + &c + &d + &ab * &c + &ab * &d + &(&a * &c) * &d + &(&b * &c) * &d;
    let den = ((&one - &q) * (&one - &t)).invert().map_err(|e| e.to_string())?;
    let expect = (even + odd * &x) * den;
    let z = z_n(1, &spec).map_err(|e| e.to_string())?;
    within(z == expect, "Z_1 against the closed form".into(), t0, Duration::from_secs(1))
}

fn timed_registered(name: &str, budget: Duration) -> Outcome {
    let t0 = Instant::now();
    let rep = run(name, &RunOptions::default()).map_err(|e| e.to_string())?;
    within(rep.passed(), summarize(&rep), t0, budget)
}

fn yang_baxter() -> Outcome {
    let t0 = Instant::now();
    let rep = run("yang-baxter", &RunOptions::default()).map_err(|e| e.to_string())?;
    within(rep.passed() && rep.cases() == 64, summarize(&rep), t0, Duration::from_secs(10))
}

fn contour() -> Outcome {
    let rep = run("contour-cross-check", &RunOptions::default()).map_err(|e| e.to_string())?;
    let noted = rep.notes.iter().any(|n| n.contains("displayed reading"));
    Ok((rep.passed() && noted, format!("{}; odd-case resolution noted: {noted}", summarize(&rep))))
}

fn koornwinder() -> Outcome {
    let c = run("koornwinder-constant", &RunOptions::default()).map_err(|e| e.to_string())?;
    let bc = run("koornwinder-bc", &RunOptions::default()).map_err(|e| e.to_string())?;
    let singles = bc.notes.iter().find(|n| n.contains("single inversions")).cloned().unwrap_or_default();
    Ok((c.passed() && bc.passed(), format!("constant {}; bc {}; {singles}", summarize(&c), summarize(&bc))))
}

fn classical() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["mehler", "littlewood"] {
        let rep = run(name, &RunOptions::default()).map_err(|e| e.to_string())?;
        ok &= rep.passed();
        parts.push(format!("{name} {:?}", rep.status));
    }
    let cd = cd_equiv_check(6);
    ok &= cd.passed();
    parts.push(format!("cd-equiv {} cases", cd.cases()));
    let (mut ab_cases, mut ab_bad) = (0, 0);
    for mu in partitions_up_to(5, 5, 5) {
        for n in 0..=4 {
            let rep = ab_equiv_check(&mu, n, Caps::new(3, 0, 6));
            ab_cases += 1;
            ab_bad += usize::from(!rep.passed());
        }
    }
    ok &= ab_bad == 0;
    parts.push(format!("ab-equiv {ab_bad}/{ab_cases} failing"));
    let (mut inv_cases, mut inv_bad) = (0, 0);
    for mu in partitions_up_to(4, 4, 4) {
        for n in 0..=3 {
            let rep = inv_sym_identity_check(&mu, n, Caps::new(3, 6, 0), InvReading::ConjugateEven);
            inv_cases += 1;
            inv_bad += usize::from(!rep.passed());
        }
    }
    ok &= inv_bad == 0;
    parts.push(format!("inv-sym {inv_bad}/{inv_cases} failing"));
    let _ = Partition::empty();
    Ok((ok, parts.join("; ")))
}

fn sampler() -> Outcome {
    let cfg = SamplerConfig::default();
    let rep = sampler_tv_verify(&NumericParams::reference(), 20240601, 100_000, 3, 0.02, &cfg).map_err(|e| e.to_string())?;
    let tv = rep.params.get("tv").cloned().unwrap_or_default();
    let st = run("stationary-cross-check", &RunOptions::default()).map_err(|e| e.to_string())?;
    let info = st.notes.first().cloned().unwrap_or_default();
    Ok((rep.passed() && st.passed(), format!("TV {tv}, L {}; stationarity: {info}", rep.params["L"])))
}

fn kernel() -> Outcome {
    let rep = kernel_property_suite(1000, 7);
    let mut sums = 0;
    let specs = [
        (0, Caps::new(3, 0, 3)),
        (1, Caps::new(2, 2, 2)),
        (2, Caps::new(2, 2, 2)),
    ];
    for (nv, caps) in specs {
        let hl = ProcessSpec::new(nv, caps).side(Side::HallLittlewood);
        total_mass(&hl).map_err(|e| e.to_string())?;
        fbhl_masses(&hl, SupportConvention::Forward).map_err(|e| e.to_string())?;
        koornwinder_rhs(1, &hl).map_err(|e| e.to_string())?;
        for n in 0..=2 {
            z_n(n, &ProcessSpec::new(nv, caps)).map_err(|e| e.to_string())?;
        }
        sums += 6;
    }
    Ok((rep.passed(), format!("{}; {sums} process sums with even root powers", summarize(&rep))))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Z_1 closed form", Box::new(z1_closed_form)),
        ("(q,t)-symmetry", Box::new(|| registered("qt-symmetry"))),
        ("(a,b,c,d)-symmetry", Box::new(|| registered("abcd-symmetry"))),
        ("parameter absorption", Box::new(|| registered("absorb-params"))),
        ("partition function", Box::new(|| registered("partition-function"))),
        ("contour three-way cross-check", Box::new(contour)),
        ("Yang-Baxter", Box::new(yang_baxter)),
        ("boson rows are skew Hall-Littlewood", Box::new(|| timed_registered("boson-hl", Duration::from_secs(30)))),
        ("two-vertex boundary compatibility", Box::new(|| registered("boundary-compat"))),
        ("HL process / six-vertex matching", Box::new(|| timed_registered("hl-6vm-matching", Duration::from_secs(600)))),
        ("Koornwinder constant and BC symmetry", Box::new(koornwinder)),
        ("Mehler, Littlewood and absorption lemmas", Box::new(classical)),
        ("sampler TV and stationarity", Box::new(sampler)),
        ("kernel properties", Box::new(kernel)),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!("{} {:>2} {title}: {detail} [{:.2?}]", if ok { "PASS" } else { "FAIL" }, i + 1, t0.elapsed());
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
