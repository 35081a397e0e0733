//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line with the measured values. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use dpcount::constants::{
    alpha, alpha_total_polytope, predict, splitting_instances, tamagawa_p, tamagawa_p_oracle,
    theta_closed, theta_local,
};
use dpcount::exact::{int_to_i128, rat, rat_int, Rational};
use dpcount::qfield::{make_field, sieve_primes};
use dpcount::surface::{count_direct, height, Boundary};
use dpcount::torsor::{
    count_torsor, monomial_gcd_target, monomial_value_ideal, normalize_representative,
    par_check_torsor_points, psi, script_height,
};
use dpcount::verify::{example_suite, geometry_suite};
use num::Signed;
use std::sync::Mutex;
use std::time::Instant;

const FIELDS: [i64; 4] = [0, -1, -2, -5];
const BOUNDARIES: [Boundary; 2] = [Boundary::AboveSingularity, Boundary::AboveLine];

// The criteria with runtime budgets must not contend with each other for
// cores, so the suite runs one criterion at a time.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn field_label(d: i64) -> String {
    if d == 0 {
        "q".into()
    } else {
        format!("iq:{d}")
    }
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("acceptance {criterion}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
}

#[test]
fn criterion_1_oracle_equivalence() {
    let _guard = serial();
    let start = Instant::now();
    let mut all_ok = true;
    let mut cases = 0usize;
    for d in FIELDS {
        let f = make_field(d).unwrap();
        let bounds: Vec<i64> = if d == 0 {
            vec![5, 10, 25, 50, 100, 500, 1000]
        } else {
            vec![5, 10, 25, 50]
        };
        for boundary in BOUNDARIES {
            for b in &bounds {
                let bound = rat(*b, 1);
                let direct = count_direct(&f, boundary, &bound).unwrap();
                let torsor = count_torsor(&f, boundary, &bound).unwrap();
                cases += 1;
                if direct.count != torsor.count {
                    all_ok = false;
                    eprintln!(
                        "mismatch: field={} boundary={} B={b}: direct {} vs torsor {}",
                        field_label(d),
                        boundary.index(),
                        direct.count,
                        torsor.count
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed.as_secs() < 600;
    report(
        "1 (oracle equivalence)",
        all_ok && in_budget,
        &format!("{cases} (field, boundary, B) cases, {elapsed:.1?}"),
    );
    assert!(all_ok, "torsor and direct counts differ");
    assert!(in_budget, "criterion 1 exceeded its 10-minute budget: {elapsed:?}");
}

#[test]
fn criterion_2_worked_example() {
    let _guard = serial();
    let checks = example_suite();
    let pass = checks.iter().all(|c| c.pass);
    report(
        "2 (worked example)",
        pass,
        &format!("{} exact checks over Q(sqrt(-5))", checks.len()),
    );
    assert!(pass, "{checks:?}");
}

#[test]
fn criterion_3_constant_identities() {
    let _guard = serial();
    // θ subset sum = closed form for every prime-ideal norm ≤ 10⁴
    let mut norms: Vec<i128> = Vec::new();
    for p in sieve_primes(10_000) {
        norms.push(p as i128);
        if (p as i128) * (p as i128) <= 10_000 {
            norms.push((p as i128) * (p as i128));
        }
    }
    let theta_ok = norms.iter().all(|&q| {
        BOUNDARIES.iter().all(|&b| theta_local(b, q) == theta_closed(b, q))
    });

    let v1 = alpha_total_polytope(Boundary::AboveSingularity).volume() == Ok(rat(1, 72));
    let v2 = alpha_total_polytope(Boundary::AboveLine).volume() == Ok(rat(11, 72));

    let a1 = alpha(Boundary::AboveSingularity, (1, 2)).unwrap()
        + alpha(Boundary::AboveSingularity, (2, 3)).unwrap();
    let a2 = alpha(Boundary::AboveLine, (1, 2)).unwrap()
        + alpha(Boundary::AboveLine, (2, 3)).unwrap()
        + alpha(Boundary::AboveLine, (1, 4)).unwrap();
    let alpha_ok = a1 == rat(1, 72) && a2 == rat(11, 72);

    let mut tam_ok = true;
    for (_d, pi) in splitting_instances(&[2, 3, 5, 7]) {
        for b in BOUNDARIES {
            let iv = tamagawa_p_oracle(b, &pi, 12);
            tam_ok &= iv.contains(&tamagawa_p(b, pi.norm));
            tam_ok &= iv.width() < rat(1, 1000);
        }
    }

    let pass = theta_ok && v1 && v2 && alpha_ok && tam_ok;
    report(
        "3 (constant identities)",
        pass,
        &format!(
            "theta on {} norms, volumes 1/72 & 11/72, alpha sums, oracle at depth 12",
            norms.len()
        ),
    );
    assert!(theta_ok, "theta subset sum differs from the closed form");
    assert!(v1 && v2, "polytope volumes are not 1/72 and 11/72");
    assert!(alpha_ok, "alpha parts do not sum to the region volumes");
    assert!(tam_ok, "p-adic density oracle failed containment or width");
}

#[test]
fn criterion_4_geometry_fidelity() {
    let _guard = serial();
    let checks = geometry_suite();
    let pass = checks.iter().all(|c| c.pass);
    report("4 (geometry fidelity)", pass, &format!("{} computed checks", checks.len()));
    assert!(pass, "{checks:?}");
}

#[test]
fn criterion_5_height_compatibility() {
    let _guard = serial();
    let start = Instant::now();
    let mut total_points = 0u64;
    let mut total_bad = 0u64;
    for d in FIELDS {
        let f = make_field(d).unwrap();
        // the largest bound of criterion 1 covers every smaller bound
        let bound = if d == 0 { rat(1000, 1) } else { rat(50, 1) };
        for boundary in BOUNDARIES {
            let (points, bad) = par_check_torsor_points(&f, boundary, &bound, |twist, etas| {
                let script = script_height(&f, boundary, etas).unwrap();
                let pt = normalize_representative(&f, &psi(&f, etas).unwrap());
                let h = height(&f, boundary, &pt).unwrap();
                script == h * twist.scale.clone()
                    && monomial_value_ideal(&f, boundary, etas)
                        == monomial_gcd_target(&f, twist)
            });
            total_points += points;
            total_bad += bad;
        }
    }
    let pass = total_bad == 0 && total_points > 0;
    report(
        "5 (height compatibility and monomial gcd identity)",
        pass,
        &format!("{total_points} torsor points checked exactly, {:.1?}", start.elapsed()),
    );
    assert_eq!(total_bad, 0, "height or gcd identity failed on enumerated points");
}

#[test]
fn criterion_6_asymptotic_trend() {
    let _guard = serial();
    let f = make_field(0).unwrap();
    let mut window_ok = true;
    let mut shrink_ok = true;
    let mut torsor_secs = 0u64;
    let mut details = String::new();
    for boundary in BOUNDARIES {
        let prediction = predict(&f, boundary, 1_000_000);
        let mut ratios = Vec::new();
        for b in [1_000i64, 100_000] {
            let bound = rat(b, 1);
            let r = count_torsor(&f, boundary, &bound).unwrap();
            torsor_secs += (r.elapsed_ms / 1000) as u64;
            let main = prediction.main_term(&bound);
            let mid = (&main.lo + &main.hi) / rat(2, 1);
            ratios.push(rat_int(r.count as i128) / mid);
        }
        let (at_1e3, at_1e5) = (&ratios[0], &ratios[1]);
        let in_window = *at_1e5 >= rat(2, 5) && *at_1e5 <= rat(5, 2);
        let shrinks = (at_1e5 - rat(1, 1)).abs() < (at_1e3 - rat(1, 1)).abs();
        window_ok &= in_window;
        shrink_ok &= shrinks;
        details.push_str(&format!(
            "i={}: ratio(1e3)={} ratio(1e5)={} window={} shrinks={}; ",
            boundary.index(),
            decimal(at_1e3),
            decimal(at_1e5),
            in_window,
            shrinks
        ));
    }
    let in_budget = torsor_secs < 900;
    report("6 (asymptotic trend)", window_ok && shrink_ok && in_budget, details.trim_end());
    assert!(shrink_ok, "ratio distance to 1 did not shrink from B=10^3 to B=10^5");
    assert!(in_budget, "torsor counting at B=10^5 exceeded 15 minutes");
    // The singularity boundary genuinely violates this window: the ratio is
    // ≈ 5.6 at B = 10^5 (decreasing, ≈ 4.5 at 10^6) because the subleading
    // B·log³B-scale terms still dominate at desk scale; no admissible
    // leading constant brings it into [0.4, 2.5]. Asserted as specified and
    // expected to fail; see the repository notes on the asymptotic window.
    assert!(
        window_ok,
        "ratio outside [0.4, 2.5] at B=10^5: {details} (known-unattainable window for i=1)"
    );
}

fn decimal(r: &Rational) -> String {
    let scaled = (r * rat(1000, 1)).round();
    let v = int_to_i128(scaled.numer()) as f64 / 1000.0;
    format!("{v:.3}")
}

#[test]
fn criterion_7_prediction_self_consistency() {
    let _guard = serial();
    // predict() itself asserts the two assembly routes agree symbolically;
    // this criterion additionally pins the recomputed exponents.
    let mut pass = true;
    for d in FIELDS {
        let f = make_field(d).unwrap();
        for boundary in BOUNDARIES {
            let p = predict(&f, boundary, 2_000);
            let expected_b = match boundary {
                Boundary::AboveSingularity => 5,
                Boundary::AboveLine => 4,
            };
            pass &= p.b == expected_b;
            pass &= boundary.log_power() == expected_b;
        }
    }
    report(
        "7 (prediction self-consistency)",
        pass,
        "framework = closed form symbolically for 4 fields × 2 boundaries; b1=5, b2=4",
    );
    assert!(pass);
}
