//! Named verification suites: machine-checkable transcriptions of the
//! geometric data, the constant identities, the worked example over
//! ℚ(√−5), and the correspondence between the two counting routes.
//!
//! Each check returns a labelled pass/fail so the command-line runner can
//! print one line per check and exit nonzero on any failure.

use crate::constants::{
    self, alpha_total_polytope, predict, splitting_instances, tamagawa_p, tamagawa_p_oracle,
    theta_closed, theta_local,
};
use crate::exact::{rat, Rational, SymbolicReal};
use crate::geometry::{
    self, adjacency_from_pairing, coprimality_pairs, degree_of_monomial, pairing, BoundaryDivisor,
    ANTICANONICAL, EDGES, E_CLASSES, IRRELEVANT_EXPONENTS, PSI_EXPONENTS,
};
use crate::qfield::{make_field, AlgInt, FracIdeal, Qelt};
use crate::surface::{count_direct, height, integrality, Boundary};
use crate::torsor::{
    count_torsor, membership, monomial_gcd_target, monomial_value_ideal, normalize_representative,
    psi, script_height, MembershipFailure, MembershipMode, TwistData,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(out: &mut Vec<CheckResult>, suite: &'static str, name: &str, pass: bool, detail: String) {
    out.push(CheckResult { suite, name: name.to_string(), pass, detail });
}

/// Picard-lattice fidelity: adjacency, section degrees, principal
/// relations, ranks.
pub fn geometry_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let s = "geometry";

    let adj = adjacency_from_pairing();
    check(
        &mut out,
        s,
        "adjacency-from-intersections",
        adj == EDGES.to_vec(),
        format!("{} edges", adj.len()),
    );
    check(
        &mut out,
        s,
        "coprimality-pair-count",
        coprimality_pairs().len() == 25,
        format!("{}", coprimality_pairs().len()),
    );
    let psi_ok = PSI_EXPONENTS.iter().all(|e| degree_of_monomial(e) == ANTICANONICAL);
    check(&mut out, s, "anticanonical-sections", psi_ok, "5 sections".into());
    for b in [BoundaryDivisor::AboveSingularity, BoundaryDivisor::AboveLine] {
        let target = b.log_anticanonical();
        let ok = b.height_monomials().iter().all(|e| degree_of_monomial(e) == target);
        check(
            &mut out,
            s,
            &format!("log-anticanonical-monomials-{}", b.index()),
            ok,
            format!("{} monomials", b.height_monomials().len()),
        );
    }
    let principal: [[i64; 9]; 2] =
        [[0, 1, 1, -1, 1, 1, -1, 0, 0], [1, 1, 0, 1, 1, -1, 0, -1, 0]];
    let principal_ok = principal.iter().all(|combo| {
        let mut c = geometry::PicClass::ZERO;
        for (j, &m) in combo.iter().enumerate() {
            c = c.add(&E_CLASSES[j].scale(m));
        }
        c == geometry::PicClass::ZERO
    });
    check(&mut out, s, "principal-divisor-relations", principal_ok, "2 relations".into());
    let weighted = {
        let weights = [2i64, 3, 2, 1, 2, 1, 0, 0, 0];
        let mut c = geometry::PicClass::ZERO;
        for (j, &m) in weights.iter().enumerate() {
            c = c.add(&E_CLASSES[j].scale(m));
        }
        c == ANTICANONICAL
    };
    check(&mut out, s, "weighted-chain-anticanonical", weighted, String::new());
    check(
        &mut out,
        s,
        "negative-curve-self-intersections",
        (0..3).all(|j| pairing(&E_CLASSES[j], &E_CLASSES[j]) == -2)
            && (3..8).all(|j| pairing(&E_CLASSES[j], &E_CLASSES[j]) == -1),
        String::new(),
    );
    check(
        &mut out,
        s,
        "log-powers",
        BoundaryDivisor::AboveSingularity.log_power() == 5
            && BoundaryDivisor::AboveLine.log_power() == 4,
        "b1=5 b2=4".into(),
    );
    let squarefree = IRRELEVANT_EXPONENTS.iter().all(|row| row.iter().all(|&e| e <= 1));
    check(&mut out, s, "irrelevant-monomials-squarefree", squarefree, String::new());
    out
}

/// Constant identities: θ subset-sum vs closed form, polytope volumes,
/// α decompositions, Tamagawa closed forms inside the oracle intervals.
pub fn constants_suite(oracle_depth: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let s = "constants";

    let mut theta_ok = true;
    for q in prime_powers_up_to(10_000) {
        for b in [Boundary::AboveSingularity, Boundary::AboveLine] {
            if theta_local(b, q) != theta_closed(b, q) {
                theta_ok = false;
            }
        }
    }
    check(&mut out, s, "theta-subset-sum-equals-closed-form", theta_ok, "norms ≤ 10^4".into());

    let v1 = alpha_total_polytope(Boundary::AboveSingularity).volume();
    check(&mut out, s, "volume-singularity-region", v1 == Ok(rat(1, 72)), format!("{v1:?}"));
    let v2 = alpha_total_polytope(Boundary::AboveLine).volume();
    check(&mut out, s, "volume-line-region", v2 == Ok(rat(11, 72)), format!("{v2:?}"));

    let a1: Rational = BoundaryDivisor::AboveSingularity
        .clemens_max_faces()
        .iter()
        .map(|&f| constants::alpha(Boundary::AboveSingularity, f).unwrap())
        .sum();
    check(&mut out, s, "alpha-parts-sum-singularity", a1 == rat(1, 72), format!("{a1}"));
    let a2: Rational = BoundaryDivisor::AboveLine
        .clemens_max_faces()
        .iter()
        .map(|&f| constants::alpha(Boundary::AboveLine, f).unwrap())
        .sum();
    check(&mut out, s, "alpha-parts-sum-line", a2 == rat(11, 72), format!("{a2}"));

    let mut tam_ok = true;
    let mut widths_ok = true;
    for (_d, pi) in splitting_instances(&[2, 3, 5, 7]) {
        for b in [Boundary::AboveSingularity, Boundary::AboveLine] {
            let iv = tamagawa_p_oracle(b, &pi, oracle_depth);
            if !iv.contains(&tamagawa_p(b, pi.norm)) {
                tam_ok = false;
            }
            if iv.width() >= rat(1, 1000) {
                widths_ok = false;
            }
        }
    }
    check(
        &mut out,
        s,
        "tamagawa-oracle-contains-closed-form",
        tam_ok,
        "p ∈ {2,3,5,7}, all splitting types".into(),
    );
    check(&mut out, s, "tamagawa-oracle-width", widths_ok, format!("depth {oracle_depth}"));
    out
}

fn prime_powers_up_to(bound: i64) -> Vec<i128> {
    let mut out = Vec::new();
    for p in crate::qfield::sieve_primes(bound) {
        let mut q = p as i128;
        while q <= bound as i128 {
            out.push(q);
            q *= p as i128;
        }
    }
    out.sort();
    out
}

/// The worked example over ℚ(√−5).
pub fn example_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let s = "example";
    let f = make_field(-5).unwrap();
    let p = FracIdeal::from_hnf(&f, 2, 1, 1);

    let p_prime: [Qelt; 9] = [
        Qelt::ONE,
        Qelt::new(AlgInt::new(1, 0), 2),
        Qelt::ONE,
        Qelt::integral(AlgInt::new(1, 1)),
        Qelt::from_int(2),
        Qelt::integral(AlgInt::new(1, -1)),
        Qelt::new(AlgInt::new(1, 1), 2),
        Qelt::new(AlgInt::new(1, -1), 2),
        Qelt::from_int(7),
    ];
    let p_double: [Qelt; 9] = [
        Qelt::ONE,
        Qelt::ONE,
        Qelt::ONE,
        Qelt::integral(AlgInt::new(1, 1)),
        Qelt::from_int(2),
        Qelt::integral(AlgInt::new(1, -1)),
        Qelt::integral(AlgInt::new(1, 1)),
        Qelt::integral(AlgInt::new(1, -1)),
        Qelt::from_int(14),
    ];

    let c_lemma: [FracIdeal; 6] = std::array::from_fn(|_| p.clone());
    let lemma_twist = TwistData::from_c(&f, Boundary::AboveSingularity, c_lemma);
    let r = membership(&f, &lemma_twist, &p_prime, MembershipMode::Lemma);
    check(&mut out, s, "first-point-lemma-membership", r == Ok(()), format!("{r:?}"));

    let p3 = f.ideal_product(&f.ideal_product(&p, &p), &p);
    let nicer_twist = TwistData::from_c(
        &f,
        Boundary::AboveSingularity,
        [p3, p.clone(), p.clone(), p.clone(), p.clone(), p.clone()],
    );
    let r = membership(&f, &nicer_twist, &p_prime, MembershipMode::Nicer);
    check(
        &mut out,
        s,
        "first-point-nicer-membership-fails",
        r == Err(MembershipFailure::NotUnit(2)),
        r.err().map(|e| e.to_string()).unwrap_or_default(),
    );

    let r = membership(&f, &nicer_twist, &p_double, MembershipMode::Nicer);
    check(&mut out, s, "rescaled-point-nicer-membership", r == Ok(()), format!("{r:?}"));

    // 2·7 + ½(1+α)³ + ½(1−α)³ = 0
    let cube = |z: Qelt| f.q_mul(f.q_mul(z, z), z);
    let half = Qelt::new(AlgInt::new(1, 0), 2);
    let identity = f.q_add(
        f.q_mul(Qelt::from_int(2), Qelt::from_int(7)),
        f.q_add(
            f.q_mul(half, cube(Qelt::integral(AlgInt::new(1, 1)))),
            f.q_mul(half, cube(Qelt::integral(AlgInt::new(1, -1)))),
        ),
    );
    check(&mut out, s, "torsor-equation-identity", identity.is_zero(), String::new());

    // the image is an integral point of height 81 = 1296/16
    let img = normalize_representative(&f, &psi(&f, &p_double).unwrap());
    let h = height(&f, Boundary::AboveSingularity, &img);
    check(
        &mut out,
        s,
        "image-integral-point",
        h == Ok(rat(81, 1)) && integrality(&f, Boundary::AboveSingularity, &img),
        format!("height {h:?}"),
    );
    out
}

/// Torsor vs direct equality on a small grid, plus per-point height and
/// gcd-identity checks.
pub fn correspondence_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let s = "correspondence";
    for d in [0i64, -1, -2, -5] {
        let f = make_field(d).unwrap();
        for boundary in [Boundary::AboveSingularity, Boundary::AboveLine] {
            for b in [2i64, 5, 10] {
                let bound = rat(b, 1);
                let direct = count_direct(&f, boundary, &bound).unwrap();
                let torsor = count_torsor(&f, boundary, &bound).unwrap();
                check(
                    &mut out,
                    s,
                    &format!("count-d{}-i{}-B{}", d, boundary.index(), b),
                    direct.count == torsor.count,
                    format!("direct {} torsor {}", direct.count, torsor.count),
                );
            }
            let mut height_ok = true;
            let mut gcd_ok = true;
            crate::torsor::for_each_torsor_point(&f, boundary, &rat(6, 1), |twist, etas| {
                let script = script_height(&f, boundary, etas).unwrap();
                let pt = normalize_representative(&f, &psi(&f, etas).unwrap());
                let h = height(&f, boundary, &pt).unwrap();
                if script != h * twist.scale.clone() {
                    height_ok = false;
                }
                if monomial_value_ideal(&f, boundary, etas) != monomial_gcd_target(&f, twist) {
                    gcd_ok = false;
                }
            });
            check(
                &mut out,
                s,
                &format!("height-compatibility-d{}-i{}", d, boundary.index()),
                height_ok,
                String::new(),
            );
            check(
                &mut out,
                s,
                &format!("monomial-gcd-identity-d{}-i{}", d, boundary.index()),
                gcd_ok,
                String::new(),
            );
        }
    }
    out
}

/// Two-route assembly consistency of the predictions.
pub fn prediction_suite(truncation: i64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let s = "prediction";
    for d in [0i64, -1, -2, -5] {
        let f = make_field(d).unwrap();
        for boundary in [Boundary::AboveSingularity, Boundary::AboveLine] {
            let p = predict(&f, boundary, truncation);
            let b_expected = match boundary {
                Boundary::AboveSingularity => 5,
                Boundary::AboveLine => 4,
            };
            check(
                &mut out,
                s,
                &format!("assembly-d{}-i{}", d, boundary.index()),
                p.b == b_expected && p.c.lo > rat(0, 1),
                format!("b={} c={}", p.b, p.c),
            );
        }
    }
    // the ℚ symbolic prefactors in closed form
    let f = make_field(0).unwrap();
    let p1 = predict(&f, Boundary::AboveSingularity, truncation);
    let p2 = predict(&f, Boundary::AboveLine, truncation);
    check(
        &mut out,
        s,
        "rational-prefactors",
        p1.c_symbolic == SymbolicReal::rational(rat(1, 18))
            && p2.c_symbolic == SymbolicReal::rational(rat(11, 18)),
        format!("{} and {}", p1.c_symbolic, p2.c_symbolic),
    );
    out
}

/// Everything, with moderate work parameters.
pub fn all_suites() -> Vec<CheckResult> {
    let mut out = geometry_suite();
    out.extend(constants_suite(12));
    out.extend(example_suite());
    out.extend(correspondence_suite());
    out.extend(prediction_suite(10_000));
    out
}
