//! The thirteen acceptance criteria, one printed line each.
//!
//! Two criteria cannot pass as stated (see the notes beside them); the test
//! asserts that exactly those two are red, so any other regression or an
//! unexpected change in either of them fails the run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use homcat::algebra::quantum::quantum_binomial_coeffs;
use homcat::algebra::{QTPoly, TriPoincare};
use homcat::cli::verify_dsq;
use homcat::hochschild::{euler_bracket, hhh};
use homcat::moybracket::{bracket, closed_form_a1};
use homcat::oracle::{dense_slice_dim, square_webs, verify_a2_cases, verify_markov2_oracles, verify_square_lemmas};
use homcat::presentations::delta::{check_bimodule, delta_1k, delta_22, delta_general, zip_dumbbell};
use homcat::presentations::present_cached;
use homcat::webs::{crossing_terms, local_web, resolve_braid, ColouredBraid, LadderWeb, Resolution, Slice};

/// Runtime budgets in seconds, indexed by criterion number.
const BUDGET: [Option<u64>; 14] =
    [None, Some(10), Some(60), Some(60), Some(300), None, Some(600), Some(1800), None, None, None, None, None, None];

/// Criteria that cannot pass as stated.
const EXPECTED_RED: [usize; 2] = [4, 7];

/// Hopf link, colours (2,2), `hhh` up to q = 4, as `(h2, hh2, q2, dim)`.
const HOPF_22_Q4: [(i64, i64, i64, u64); 9] = [
    (-2, -2, 6, 1),
    (-2, 0, 4, 1),
    (-2, 0, 8, 3),
    (0, -4, 8, 1),
    (0, -2, 2, 1),
    (0, -2, 6, 3),
    (0, 0, 0, 1),
    (0, 0, 4, 2),
    (0, 0, 8, 5),
];

type Outcome = Result<String, String>;

/// Writes past the test harness's output capture, so the table shows in a
/// plain `cargo test` run.
fn say(line: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn braid(c: &[u8], w: &[i32]) -> ColouredBraid {
    ColouredBraid::new(c.to_vec(), w.to_vec()).unwrap()
}

/// Memoizes `hhh` so criterion 10 reuses the tables of 6 to 9.
#[derive(Default)]
struct Tables(BTreeMap<(Vec<u8>, Vec<i32>, i64), TriPoincare>);

impl Tables {
    fn get(&mut self, b: &ColouredBraid, q: i64) -> Result<TriPoincare, String> {
        let key = (b.colours.clone(), b.word.clone(), q);
        if let Some(t) = self.0.get(&key) {
            return Ok(t.clone());
        }
        let t = hhh(b, q).map_err(|e| format!("{:?} {:?}: {e}", b.colours, b.word))?;
        self.0.insert(key, t.clone());
        Ok(t)
    }

    fn same(&mut self, a: &ColouredBraid, b: &ColouredBraid, q: i64) -> Outcome {
        let (ta, tb) = (self.get(a, q)?, self.get(b, q)?);
        if ta == tb {
            Ok(format!("{:?}: {:?} = {:?} (q <= {q}, {} rows)", a.colours, a.word, b.word, ta.rows().len()))
        } else {
            Err(format!("{:?}: {:?} != {:?} at q <= {q}", a.colours, a.word, b.word))
        }
    }
}

fn c1_a1() -> Outcome {
    for k in [1u8, 2] {
        let t = hhh(&braid(&[k], &[]), 12).map_err(|e| e.to_string())?;
        if t.rows().iter().any(|r| r.h2 != 0) {
            return Err(format!("k={k}: nonzero homological degree"));
        }
        let got = euler_bracket(&t).map_err(|e| e.to_string())?;
        let want = closed_form_a1(k, 12);
        if !got.agrees_up_to(&want, 24) {
            return Err(format!("k={k}: table differs from the product formula"));
        }
    }
    Ok("k = 1, 2 match the product formula for q <= 12".into())
}

fn c2_a2() -> Outcome {
    let r = verify_a2_cases(10);
    if r.passed() {
        Ok(format!("{} graded dimensions of the four partial closures", r.checked))
    } else {
        Err(r.first_failure.unwrap_or_default())
    }
}

fn c3_digon() -> Outcome {
    let mut n = 0;
    for (i, j) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
        let digon = LadderWeb::new(vec![i + j], vec![Slice::Split { pos: 0, left: i, right: j }, Slice::Merge { pos: 0 }])
            .map_err(|e| e.to_string())?;
        let (d, arc) = (present_cached(&digon), present_cached(&LadderWeb::identity(&[i + j])));
        let binom = quantum_binomial_coeffs((i + j) as i64, i as i64).map_err(|e| e.to_string())?;
        for q in (0..=16u32).step_by(2) {
            let want: usize = binom
                .iter()
                .enumerate()
                .filter(|&(k, _)| 2 * k as u32 <= q)
                .map(|(k, &c)| c as usize * arc.slice_dim(q - 2 * k as u32))
                .sum();
            let got = d.slice_dim(q);
            n += 1;
            if got != want {
                return Err(format!("({i},{j}) digon at q={q}: {got} != {want}"));
            }
        }
    }
    Ok(format!("{n} slices of the four digons"))
}

/// Stated: 1112 `hj = -2 id` and 2113 `ψ2φ2 = id`. With the comultiplication
/// as given, the first composite is `-id`. The second depends on the sign of
/// a comultiplication that is never written down, and its natural form gives
/// `-id`. All other identities and all dimension checks hold.
fn c4_squares() -> Outcome {
    let r = verify_square_lemmas(10);
    if r.passed() {
        Ok(format!("{} checks", r.checked))
    } else {
        Err(r.first_failure.unwrap_or_default())
    }
}

fn c5_dsq() -> Outcome {
    let r = verify_dsq(10);
    if r.passed() {
        Ok(format!("{} composites vanish", r.checked))
    } else {
        Err(r.first_failure.unwrap_or_default())
    }
}

fn c6_r2(t: &mut Tables) -> Outcome {
    let a = t.same(&braid(&[1, 1], &[1, -1]), &braid(&[1, 1], &[]), 8)?;
    let b = t.same(&braid(&[2, 2], &[1, -1]), &braid(&[2, 2], &[]), 6)?;
    Ok(format!("{a}; {b}"))
}

/// σ1σ2σ1 sends strand 1 to strand 3, so colours (1,1,2) have top (2,1,1)
/// and the closure does not exist. The closable arrangement (1,2,1) of the
/// same colours is run as a supplement and reported in the detail.
fn c7_r3(t: &mut Tables) -> Outcome {
    let a = t.same(&braid(&[1, 1, 1], &[1, 2, 1]), &braid(&[1, 1, 1], &[2, 1, 2]), 6)?;
    let sup = t.same(&braid(&[1, 2, 1], &[1, 2, 1]), &braid(&[1, 2, 1], &[2, 1, 2]), 4)?;
    let b112 = braid(&[1, 1, 2], &[1, 2, 1]);
    match hhh(&b112, 4) {
        Ok(_) => Ok(format!("{a}; (1,1,2) closes; {sup}")),
        Err(e) => Err(format!("{a}; (1,1,2): {e}; supplement {sup}")),
    }
}

fn c8_markov1(t: &mut Tables) -> Outcome {
    t.same(&braid(&[2, 2], &[1, -1, 1]), &braid(&[2, 2], &[-1, 1, 1]), 6)
}

fn c9_kinks(t: &mut Tables) -> Outcome {
    for c in [1u8, 2] {
        let c2 = 2 * c as i64;
        let unknot = t.get(&braid(&[c], &[]), 8 + c as i64)?;
        let pos = t.get(&braid(&[c, c], &[1]), 8)?;
        let neg = t.get(&braid(&[c, c], &[-1]), 8)?;
        if !pos.agrees_up_to(&unknot.truncate(16), 16) {
            return Err(format!("positive colour-{c} kink"));
        }
        if !neg.agrees_up_to(&unknot.shift(c2, -c2, -c2).truncate(16), 16) {
            return Err(format!("negative colour-{c} kink"));
        }
    }
    Ok("both colours, both signs, q <= 8".into())
}

fn c10_euler(t: &mut Tables) -> Outcome {
    let keys: Vec<_> = t.0.keys().cloned().collect();
    for (colours, word, q) in &keys {
        let b = braid(colours, word);
        let e: QTPoly = euler_bracket(&t.0[&(colours.clone(), word.clone(), *q)]).map_err(|e| e.to_string())?;
        let br = bracket(&b, *q).map_err(|e| e.to_string())?;
        if !e.agrees_up_to(&br, 2 * q) {
            return Err(format!("{colours:?} {word:?} at q <= {q}"));
        }
    }
    Ok(format!("{} braids", keys.len()))
}

fn c11_resolutions() -> Outcome {
    let r = verify_markov2_oracles(10);
    if r.passed() {
        Ok(format!("{} checks", r.checked))
    } else {
        Err(r.first_failure.unwrap_or_default())
    }
}

fn c12_delta() -> Outcome {
    let mut n = 0;
    for k in 1..=3 {
        let (p, d) = delta_1k(k);
        if let Some(f) = check_bimodule(&p, &d, 12) {
            return Err(format!("delta_1k({k}): {f}"));
        }
        let (_, g) = delta_general(1, k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if !p.is_zero_class(&(&g - &d.scale(&homcat::algebra::Rat::int(sign)))) {
            return Err(format!("delta_general(1,{k}) != (-1)^{k} delta_1k({k})"));
        }
        n += 2;
    }
    let (p, d) = delta_22();
    if let Some(f) = check_bimodule(&p, &d, 12) {
        return Err(format!("delta_22: {f}"));
    }
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let (p, g) = delta_general(i, j);
        if let Some(f) = check_bimodule(&p, &g, 12) {
            return Err(format!("delta_general({i},{j}): {f}"));
        }
        n += 1;
    }
    if delta_general(2, 2).1 != d {
        return Err("delta_general(2,2) != delta_22".into());
    }
    Ok(format!("{} properties", n + 2))
}

fn fixture_webs() -> Vec<(String, LadderWeb)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let mut out: Vec<(String, LadderWeb)> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let path = e.ok()?.path();
            let web = LadderWeb::from_json(&std::fs::read_to_string(&path).ok()?).ok()?;
            Some((path.file_name()?.to_string_lossy().into_owned(), web))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Fixtures, local resolutions, dumbbells, the square lemma webs and every
/// resolution of a few braids.
fn web_corpus() -> Vec<(String, LadderWeb)> {
    let mut out = fixture_webs();
    for (c1, c2) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
        for kind in [Resolution::TwoArcs, Resolution::Dumbbell, Resolution::Square, Resolution::H] {
            if let Ok(w) = local_web(c1, c2, kind) {
                out.push((format!("{kind:?}({c1},{c2})"), w));
            }
        }
        out.push((format!("zip_dumbbell({c1},{c2})"), zip_dumbbell(c1, c2)));
    }
    for sw in square_webs() {
        out.push((format!("square {}", sw.name), sw.square));
        for (i, (w, _)) in sw.summands.into_iter().enumerate() {
            out.push((format!("square {} summand {i}", sw.name), w));
        }
    }
    for b in [braid(&[2, 2], &[1, 1]), braid(&[1, 2, 1], &[1, 2, 1]), braid(&[1, 1, 1], &[1, 2, 1])] {
        let sizes: Vec<usize> = b.crossings().iter().map(|&(c1, c2, s)| crossing_terms(c1, c2, s).unwrap().len()).collect();
        let mut choice = vec![0; sizes.len()];
        loop {
            out.push((format!("{:?} {:?} {choice:?}", b.colours, b.word), resolve_braid(&b, &choice).unwrap()));
            let Some(k) = (0..sizes.len()).find(|&k| choice[k] + 1 < sizes[k]) else { break };
            choice[k] += 1;
            choice[..k].iter_mut().for_each(|c| *c = 0);
        }
    }
    out
}

fn c13_dense() -> Outcome {
    let corpus = web_corpus();
    let mut n = 0;
    for (name, w) in &corpus {
        let p = present_cached(w);
        for q in (0..=16u32).step_by(2) {
            let (fast, dense) = (p.slice_dim(q), dense_slice_dim(&p, q));
            n += 1;
            if fast != dense {
                return Err(format!("{name} at q={q}: {fast} != {dense}"));
            }
        }
    }
    Ok(format!("{} webs, {n} slices", corpus.len()))
}

#[test]
fn acceptance() {
    let mut tables = Tables::default();
    let mut red = Vec::new();
    let mut run = |n: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let r = f();
        let took = t0.elapsed();
        let over = BUDGET[n].is_some_and(|s| took > Duration::from_secs(s));
        let budget = BUDGET[n].map_or("-".to_string(), |s| format!("{s} s"));
        let (ok, detail) = match r {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("over budget; {d}")),
            Err(e) => (false, e),
        };
        say(format!("criterion {n:>2} {} {name:<22} {:>8.2} s (limit {budget:>6})  {detail}", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64()));
        if !ok {
            red.push(n);
        }
    };
    run(1, "unknot product", &mut c1_a1);
    run(2, "partial closures", &mut c2_a2);
    run(3, "digon lemma", &mut c3_digon);
    run(4, "square lemmas", &mut c4_squares);
    run(5, "d squared", &mut c5_dsq);
    run(6, "Reidemeister II", &mut || c6_r2(&mut tables));
    run(7, "Reidemeister III", &mut || c7_r3(&mut tables));
    run(8, "Markov I", &mut || c8_markov1(&mut tables));
    run(9, "kinks", &mut || c9_kinks(&mut tables));
    run(10, "Euler characteristic", &mut || c10_euler(&mut tables));
    run(11, "kink resolutions", &mut c11_resolutions);
    run(12, "comultiplications", &mut c12_delta);
    run(13, "dense slice oracle", &mut c13_dense);
    let hopf = hhh(&braid(&[2, 2], &[1, 1]), 4).unwrap();
    let rows: Vec<_> = hopf.rows().iter().map(|r| (r.h2, r.hh2, r.q2, r.dim)).collect();
    say(format!("snapshot  Hopf (2,2) q <= 4: {} rows {}", rows.len(), if rows == HOPF_22_Q4 { "unchanged" } else { "CHANGED" }));
    assert_eq!(rows, HOPF_22_Q4, "Hopf (2,2) snapshot");
    assert_eq!(red, EXPECTED_RED, "red criteria");
}
