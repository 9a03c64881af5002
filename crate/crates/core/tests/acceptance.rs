//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clutterforge::budget::{Budget, Meter};
use clutterforge::clutter::{mult, restriction_spec, Builtin, Clutter, Label};
use clutterforge::gf::build_field;
use clutterforge::graphs::connected_multigraphs;
use clutterforge::matroid::{matroid_of, MatroidTarget};
use clutterforge::polyhedral::{extreme_points, is_ideal, mfmc_check, nu, packs, tau, unit_weights, Rational};
use clutterforge::verify::{
    c5sq_witness_with, enumerate_subspaces, localization_profile, replication_tau2_report, verify_theorem, Agreement,
    TheoremId, SUBSPACE_CAP,
};
use clutterforge::vspace::{Point, Subspace};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

fn fractional(c: &Clutter) -> Result<Vec<Vec<Rational>>, String> {
    let pts = extreme_points(c, &Budget::default()).map_err(|e| e.to_string())?;
    Ok(pts.into_iter().filter(|p| p.iter().any(|v| !v.is_integer())).collect())
}

fn c1_fractional_points() -> Outcome {
    let d3 = fractional(&Clutter::builtin(Builtin::Delta3))?;
    ensure(d3 == vec![vec![half(); 3]], || format!("Delta3 fractional points {d3:?}"))?;
    let c5 = fractional(&Clutter::builtin(Builtin::C5sq))?;
    ensure(c5 == vec![vec![half(); 5]], || format!("C5sq fractional points {c5:?}"))?;
    Ok("Delta3 -> (1/2,1/2,1/2); C5sq -> (1/2,...,1/2)".into())
}

fn c2_q6() -> Outcome {
    let q6 = Clutter::builtin(Builtin::Q6);
    let ideal = is_ideal(&q6, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(ideal.is_integral(), || "Q6 reported non-ideal".into())?;
    let mut m = Meter::unlimited();
    let w = unit_weights(6);
    let t = tau(&q6, &w, &mut m).map_err(|e| e.to_string())?;
    let v = nu(&q6, &w, &mut m).map_err(|e| e.to_string())?;
    ensure(t == Some(2) && v == Some(1), || format!("tau={t:?} nu={v:?}"))?;
    let p = packs(&q6, &mut m).map_err(|e| e.to_string())?;
    ensure(!p, || "Q6 packs".into())?;
    Ok("ideal, tau=2, nu=1, does not pack".into())
}

fn c3_example_gf4() -> Outcome {
    // GF(4) elements 0, 1, a = 2, b = 3
    let s = Subspace::from_rows(4, 3, &[vec![1, 1, 0], vec![1, 0, 1]]).map_err(|e| e.to_string())?;
    let listed: [[u8; 3]; 16] = [
        [0, 0, 0], [1, 1, 0], [2, 2, 0], [3, 3, 0], [1, 0, 1], [0, 1, 1], [3, 2, 1], [2, 3, 1],
        [2, 0, 2], [3, 1, 2], [0, 2, 2], [1, 3, 2], [3, 0, 3], [2, 1, 3], [1, 2, 3], [0, 3, 3],
    ];
    let c = mult(&s).map_err(|e| e.to_string())?;
    ensure(c.len() == 16 && c.ground_size() == 12, || format!("{} members on {} elements", c.len(), c.ground_size()))?;
    let got: BTreeSet<Vec<Label>> = c.member_labels().into_iter().collect();
    let want: BTreeSet<Vec<Label>> = listed
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &v)| Label::cell(i, v)).collect())
        .collect();
    ensure(got == want, || "member list differs from the 16 listed points".into())?;
    let t0 = Instant::now();
    let ideal = is_ideal(&c, &Budget::default()).map_err(|e| e.to_string())?;
    let enum_time = t0.elapsed();
    ensure(ideal.is_integral(), || "reported non-ideal".into())?;
    ensure(enum_time < Duration::from_secs(60), || format!("vertex enumeration took {enum_time:?}"))?;
    let q6 = Clutter::builtin(Builtin::Q6);
    let emb = c
        .find_minor(&q6, &mut Meter::unlimited())
        .map_err(|e| e.to_string())?
        .ok_or("no Q6 minor found")?;
    ensure(c.check_embedding(&q6, &emb).map_err(|e| e.to_string())?, || "Q6 embedding does not check".into())?;
    // the {0,1}^3 restriction is R_{1,1}, whose clutter is Q6
    let sys = s.restrict(&vec![vec![0, 1]; 3]).map_err(|e| e.to_string())?;
    ensure(sys.points.len() == 4, || format!("restriction has {} points", sys.points.len()))?;
    let via_restriction = c.minor(&restriction_spec(4, &sys)).map_err(|e| e.to_string())?;
    ensure(
        via_restriction.is_isomorphic(&q6).map_err(|e| e.to_string())?.is_some(),
        || "restriction to {0,1}^3 is not Q6".into(),
    )?;
    let v = mfmc_check(&c, 1, &mut Meter::unlimited())
        .map_err(|e| e.to_string())?
        .ok_or("refuter found no 0/1 violation")?;
    Ok(format!(
        "16 members on 12 elements, ideal ({enum_time:.2?}), Q6 minor, violation tau={} nu={}",
        v.tau, v.nu
    ))
}

fn sweep(q: u32, n: usize, theorem: TheoremId) -> Result<(usize, usize), String> {
    let spaces = enumerate_subspaces(q, n, SUBSPACE_CAP).map_err(|e| e.to_string())?;
    let budget = Budget::default();
    let mut unknown = 0;
    for s in &spaces {
        let r = verify_theorem(s, theorem, &budget).map_err(|e| e.to_string())?;
        match r.agreement {
            Agreement::Agree => {}
            Agreement::Incomplete => unknown += 1,
            Agreement::Disagree => return Err(format!("disagreement on {}: {:?}", r.instance, r.verdicts())),
        }
    }
    Ok((spaces.len(), unknown))
}

fn c4_sweep_t11() -> Outcome {
    let (count, unknown) = sweep(3, 4, TheoremId::T11)?;
    ensure(count == 212 && unknown == 0, || format!("{count} spaces, {unknown} incomplete"))?;
    Ok("212 subspaces of GF(3)^4 agree".into())
}

fn c5_sweep_t12() -> Outcome {
    let (count, unknown) = sweep(4, 3, TheoremId::T12)?;
    ensure(count == 44 && unknown == 0, || format!("{count} spaces, {unknown} incomplete"))?;
    let zero_sum = Subspace::zero_sum(&build_field(4).map_err(|e| e.to_string())?, 3);
    let ideal = is_ideal(&mult(&zero_sum).map_err(|e| e.to_string())?, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(ideal.is_integral(), || "{x : Σx = 0} over GF(4) reported non-ideal".into())?;
    Ok("44 subspaces of GF(4)^3 agree; {Σx = 0} is ideal".into())
}

fn c6_sweep_t14() -> Outcome {
    let (a, ua) = sweep(2, 3, TheoremId::T14)?;
    let (b, ub) = sweep(3, 3, TheoremId::T14)?;
    ensure(ua + ub == 0, || format!("{} incomplete", ua + ub))?;
    Ok(format!("{a} subspaces of GF(2)^3 and {b} of GF(3)^3 agree"))
}

fn c7_c5sq_witness() -> Outcome {
    let start = Instant::now();
    let f = build_field(8).map_err(|e| e.to_string())?;
    let s = Subspace::zero_sum(&f, 3);
    let mut done = 0;
    'all: for x in 0..8u8 {
        for y in 0..8u8 {
            for z in 0..8u8 {
                let alpha: Point = vec![x, y, z];
                if s.contains(&alpha) {
                    continue;
                }
                let w = c5sq_witness_with(&s, Some(&alpha)).map_err(|e| format!("alpha {alpha:?}: {e}"))?;
                ensure(w.display.len() == 5 && w.columns.len() == 7, || format!("alpha {alpha:?}: display shape"))?;
                done += 1;
                if done == 12 {
                    break 'all;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{done} choices of alpha, each replayed to C5sq with the 5x7 display ({elapsed:.2?})"))
}

fn c8_localization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10ca1);
    let mut checked = 0;
    for q in [4u32, 8] {
        let f = build_field(q).map_err(|e| e.to_string())?;
        for n in [3usize, 4] {
            let s = Subspace::zero_sum(&f, n);
            let mut count = 0;
            while count < 25 {
                let alpha: Point = (0..n).map(|_| rng.gen_range(0..q) as u8).collect();
                if s.contains(&alpha) {
                    continue;
                }
                let p = localization_profile(&s, &alpha).map_err(|e| format!("q={q} n={n} alpha={alpha:?}: {e}"))?;
                ensure(p.components.len() == (q / 2 - 1) as usize, || "component count".into())?;
                ensure(p.components.iter().all(|c| c.vertices.len() == 2 * n), || "component size".into())?;
                count += 1;
            }
            checked += count;
        }
    }
    Ok(format!("{checked} localizations match the predicted structure"))
}

fn c9_graphs() -> Outcome {
    let start = Instant::now();
    let graphs = connected_multigraphs(7);
    let mut m = Meter::unlimited();
    for g in &graphs {
        let minor = g.has_k4e_graph_minor(&mut m).map_err(|e| e.to_string())?;
        ensure(minor != g.blocks_allowed(), || format!("exception: {g:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} connected multigraphs with <= 7 edges ({elapsed:.2?})", graphs.len()))
}

fn c10_dual_route() -> Outcome {
    let spaces = enumerate_subspaces(3, 3, SUBSPACE_CAP).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for s in &spaces {
        let m = matroid_of(s).map_err(|e| e.to_string())?;
        // each element deleted, contracted or kept
        for code in 0..27u32 {
            let (mut del, mut con) = (Vec::new(), Vec::new());
            let mut c = code;
            for e in 0..3 {
                match c % 3 {
                    1 => del.push(e),
                    2 => con.push(e),
                    _ => {}
                }
                c /= 3;
            }
            let abstract_minor = m.minor(&del, &con).map_err(|e| e.to_string())?;
            let space_minor = matroid_of(&s.minor_space(&del, &con).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(abstract_minor == space_minor, || format!("{s}: I={del:?} J={con:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (space, I, J) triples agree"))
}

fn c11_a3_minor() -> Outcome {
    let spaces = enumerate_subspaces(3, 4, SUBSPACE_CAP).map_err(|e| e.to_string())?;
    let mut with = 0;
    for s in &spaces {
        let m = matroid_of(s).map_err(|e| e.to_string())?;
        let minor = m.has_minor(MatroidTarget::A3, &mut Meter::unlimited()).map_err(|e| e.to_string())?;
        let meet = m.intersecting_circuits().is_some();
        ensure(minor.is_some() == meet, || format!("{s}: A3 minor {} vs intersecting {meet}", minor.is_some()))?;
        with += meet as usize;
    }
    Ok(format!("{} matroids, {with} with intersecting circuits", spaces.len()))
}

fn c12_replication() -> Outcome {
    let budget = Budget::default();
    let r11 = Subspace::from_rows(2, 3, &[vec![0, 1, 1], vec![1, 0, 1]]).map_err(|e| e.to_string())?;
    let r = replication_tau2_report(&r11, &budget).map_err(|e| e.to_string())?;
    ensure(
        r.ideal == Some(true) && r.minimally_non_packing == Some(true) && r.tau == Some(2) && r.isomorphic_to_q6 == Some(true),
        || format!("R11 report {r:?}"),
    )?;
    let mut packing = 0;
    let spaces = enumerate_subspaces(3, 3, SUBSPACE_CAP).map_err(|e| e.to_string())?;
    for s in &spaces {
        let r = replication_tau2_report(s, &budget).map_err(|e| format!("{s}: {e}"))?;
        ensure(r.packing_property.is_some(), || format!("{s}: packing property out of reach"))?;
        if r.packing_property == Some(true) {
            ensure(r.disjoint_support_basis, || format!("{s}: packs without disjoint supports"))?;
            packing += 1;
        }
    }
    Ok(format!("R11 ideal, minimally non-packing, tau=2, Q6; {packing} GF(3)^3 spaces with the packing property all have disjoint supports"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("fractional points of Delta3 and C5sq", c1_fractional_points),
        ("Q6 ideal but does not pack", c2_q6),
        ("GF(4) example space", c3_example_gf4),
        ("odd-q sweep over GF(3)^4", c4_sweep_t11),
        ("q=4 sweep over GF(4)^3", c5_sweep_t12),
        ("MFMC sweep over GF(2)^3 and GF(3)^3", c6_sweep_t14),
        ("C5sq witness over GF(8)^3", c7_c5sq_witness),
        ("localization structure for q in {4,8}", c8_localization),
        ("K4/e graph minors and block structure", c9_graphs),
        ("matroid minors via subspaces", c10_dual_route),
        ("A3 minor iff intersecting circuits", c11_a3_minor),
        ("replication and covering number two", c12_replication),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
