//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use subword_cluster::cluster::{enumerate_seeds, f_polynomial, g_vector, FPolynomial};
use subword_cluster::coxeter::{coxeter_elements, Word};
use subword_cluster::laurent::MPoly;
use subword_cluster::rootsys::{CartanMatrix, RootSystem, RootVec, WeightVec};
use subword_cluster::subword::{Complex, Facet};
use subword_cluster::verify::{
    check_c_vectors, check_exchange_matrix, check_g_vectors, check_lattice_points, check_lemmas,
    check_minkowski_brick, check_newton_polytopes, check_typea_models, Model, Report,
};

type Outcome = Result<String, String>;

fn rs(t: &str) -> RootSystem {
    RootSystem::from_type_str(t).unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn facet(p: &[usize]) -> Facet {
    Facet::from_one_based(p)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(reports: &[Report]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_string()),
        None => Ok(()),
    }
}

fn fpoly(n: usize, terms: &[&[i64]]) -> FPolynomial {
    let pairs: Vec<(&[i64], i64)> = terms.iter().map(|e| (*e, 1)).collect();
    FPolynomial::from_pairs(n, &pairs)
}

/// A weight in type `A_n` as a 0/1-style vector in `ℝ^{n+1}`, normalized
/// to the given coordinate sum.
fn ambient(w: &WeightVec, total: i64) -> Vec<i64> {
    let n = w.len();
    let mut v: Vec<i64> = (0..=n).map(|j| (j..n).map(|i| w[i]).sum()).collect();
    let shift = total - v.iter().sum::<i64>();
    assert_eq!(shift % (n as i64 + 1), 0, "sum {total} unreachable from {w}");
    v.iter_mut().for_each(|x| *x += shift / (n as i64 + 1));
    v
}

fn root(c: &[i64]) -> RootVec {
    RootVec::from(c.to_vec())
}

/// Product formula from the degrees, independent of the library tables.
fn catalan_from_degrees(degrees: &[u64]) -> u64 {
    let h = *degrees.iter().max().unwrap();
    let num: u64 = degrees.iter().map(|d| d + h).product();
    let den: u64 = degrees.iter().product();
    num / den
}

/// Every Coxeter element of the small types, plus one of `F4`.
fn shared_inputs() -> Vec<(String, Word)> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2", "D4"] {
        for c in coxeter_elements(rs(t).cartan()) {
            out.push((t.to_string(), c));
        }
    }
    out.push(("F4".into(), word("1,2,3,4")));
    out
}

fn models(inputs: &[(String, Word)]) -> Result<Vec<Model>, String> {
    inputs
        .iter()
        .map(|(t, c)| Model::new(rs(t), c.clone()).map_err(|e| format!("{t} c={c}: {e}")))
        .collect()
}

fn criterion_1() -> Outcome {
    let k = Complex::new(rs("A2"), word("1,2")).map_err(|e| e.to_string())?;
    let m = Model::new(rs("A2"), word("1,2")).map_err(|e| e.to_string())?;

    let facets: BTreeSet<Facet> = m.nodes().iter().map(|n| n.facet.clone()).collect();
    let want: BTreeSet<Facet> = [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]].iter().map(|p| facet(p)).collect();
    ensure(facets == want, || format!("facets {facets:?}"))?;

    // Letters 1,2,1,2,1: the ambient brick vectors have coordinate sum 7.
    let bricks = [
        ([1, 2], [4, 3, 0]),
        ([2, 3], [3, 4, 0]),
        ([3, 4], [2, 4, 1]),
        ([4, 5], [2, 3, 2]),
        ([1, 5], [4, 1, 2]),
    ];
    for (f, b) in bricks {
        let got = ambient(&k.brick_vector(&facet(&f)), 7);
        ensure(got == b, || format!("brick vector of {f:?}: {got:?}"))?;
    }

    let x1 = MPoly::x(2, 0);
    let x2 = MPoly::x(2, 1);
    let y1 = MPoly::y(2, 0);
    let y2 = MPoly::y(2, 1);
    let prod = |a: &MPoly, b: &MPoly| a * b;
    let div = |a: MPoly, b: &MPoly| a.exact_div(b).unwrap();
    let u_a1 = div(&x2 + &y1, &x1);
    let u_a12 = div(&(&prod(&prod(&x1, &y1), &y2) + &x2) + &y1, &prod(&x1, &x2));
    let u_a2 = div(&prod(&x1, &y2) + &MPoly::one(2), &x2);
    // d-vector, variable, g-vector, F-polynomial.
    let table: Vec<(RootVec, &MPoly, WeightVec, FPolynomial)> = vec![
        (root(&[-1, 0]), &x1, WeightVec::from(vec![1, 0]), FPolynomial::one(2)),
        (root(&[0, -1]), &x2, WeightVec::from(vec![0, 1]), FPolynomial::one(2)),
        (root(&[1, 0]), &u_a1, WeightVec::from(vec![-1, 1]), fpoly(2, &[&[1, 0], &[0, 0]])),
        (root(&[1, 1]), &u_a12, WeightVec::from(vec![-1, 0]), fpoly(2, &[&[1, 1], &[1, 0], &[0, 0]])),
        (root(&[0, 1]), &u_a2, WeightVec::from(vec![0, -1]), fpoly(2, &[&[0, 1], &[0, 0]])),
    ];
    for (d, u, g, f) in &table {
        let got = m.variable(d).ok_or_else(|| format!("no variable with d-vector {d}"))?;
        ensure(got == *u, || format!("variable for {d}: {got}"))?;
        let gv = g_vector(got).map_err(|e| e.to_string())?;
        ensure(gv == *g, || format!("g-vector for {d}: {gv}"))?;
        let fv = f_polynomial(got);
        ensure(fv == *f, || format!("F-polynomial for {d}: {fv}"))?;
    }
    ensure(u_a12.to_string() == "(x1*y1*y2 + x2 + y1)/(x1*x2)", || u_a12.to_string())?;

    // Root configurations (c-vectors) and weight configurations (g-vectors).
    let configs: [([usize; 2], [[i64; 2]; 2], [[i64; 2]; 2]); 5] = [
        ([1, 2], [[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([2, 3], [[1, 1], [-1, 0]], [[0, 1], [-1, 1]]),
        ([3, 4], [[0, 1], [-1, -1]], [[-1, 1], [-1, 0]]),
        ([4, 5], [[-1, 0], [0, -1]], [[-1, 0], [0, -1]]),
        ([1, 5], [[1, 0], [0, -1]], [[1, 0], [0, -1]]),
    ];
    for (f, roots, weights) in configs {
        let node = m.node(&facet(&f)).ok_or("missing facet")?;
        for (a, &i) in node.facet.positions().iter().enumerate() {
            let col = node.column(m.complex(), i);
            let c = &node.seed.c_vectors()[col];
            ensure(c.coords() == roots[a], || format!("c-vector at {f:?}/{}: {c}", i + 1))?;
            let g = g_vector(&node.seed.variables()[col]).map_err(|e| e.to_string())?;
            ensure(g.coords() == weights[a], || format!("g-vector at {f:?}/{}: {g}", i + 1))?;
        }
    }
    for r in [check_c_vectors(&m), check_g_vectors(&m), check_exchange_matrix(&m)] {
        ensure(r.passed(), || r.to_string())?;
    }
    Ok("5 facets, brick vectors, variables, d/g/c-vectors and F-polynomials exact".into())
}

fn criterion_2() -> Outcome {
    let c = word("1,3,2");
    let m = Model::new(rs("A3"), c.clone()).map_err(|e| e.to_string())?;
    let f = |terms: &[&[i64]]| fpoly(3, terms);
    let want = [
        ([1, 0, 0], f(&[&[1, 0, 0], &[0, 0, 0]])),
        ([0, 0, 1], f(&[&[0, 0, 1], &[0, 0, 0]])),
        ([1, 1, 1], f(&[&[1, 1, 1], &[1, 0, 1], &[0, 0, 1], &[1, 0, 0], &[0, 0, 0]])),
        ([0, 1, 1], f(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]])),
        ([1, 1, 0], f(&[&[1, 1, 0], &[1, 0, 0], &[0, 0, 0]])),
        ([0, 1, 0], f(&[&[0, 1, 0], &[0, 0, 0]])),
    ];
    for (beta, fw) in &want {
        let got = m.f_polynomial(&root(beta)).ok_or("missing root")?;
        ensure(got == *fw, || format!("F for {beta:?}: {got}"))?;
    }

    // Weights at positions 4..9 for all 14 facets, in ambient coordinates.
    let rows: [([usize; 3], [[i64; 4]; 6]); 14] = [
        ([1, 2, 3], [[1, 0, 0, 0], [1, 1, 1, 0], [1, 1, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([1, 2, 9], [[1, 0, 0, 0], [1, 1, 1, 0], [1, 0, 1, 0], [0, 0, 1, 0], [1, 0, 1, 1], [0, 0, 1, 1]]),
        ([1, 3, 5], [[1, 0, 0, 0], [1, 1, 0, 1], [1, 1, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([1, 5, 7], [[1, 0, 0, 0], [1, 1, 0, 1], [1, 0, 0, 1], [0, 0, 0, 1], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([1, 7, 9], [[1, 0, 0, 0], [1, 1, 0, 1], [1, 0, 0, 1], [0, 0, 0, 1], [1, 0, 1, 1], [0, 0, 1, 1]]),
        ([2, 3, 4], [[0, 1, 0, 0], [1, 1, 1, 0], [1, 1, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([2, 4, 8], [[0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 0], [0, 1, 0, 0], [0, 1, 1, 1], [0, 1, 0, 1]]),
        ([2, 8, 9], [[0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]]),
        ([3, 4, 5], [[0, 1, 0, 0], [1, 1, 0, 1], [1, 1, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([4, 5, 6], [[0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1], [0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([4, 6, 8], [[0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1], [0, 1, 0, 0], [0, 1, 1, 1], [0, 1, 0, 1]]),
        ([5, 6, 7], [[0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1], [0, 0, 0, 1], [1, 1, 0, 1], [0, 1, 0, 1]]),
        ([6, 7, 8], [[0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1], [0, 0, 0, 1], [0, 1, 1, 1], [0, 1, 0, 1]]),
        ([7, 8, 9], [[0, 1, 0, 0], [1, 1, 0, 1], [0, 1, 0, 1], [0, 0, 0, 1], [0, 1, 1, 1], [0, 0, 1, 1]]),
    ];
    ensure(m.nodes().len() == 14, || format!("{} facets", m.nodes().len()))?;
    for (f, weights) in rows {
        let node = m.node(&facet(&f)).ok_or_else(|| format!("missing facet {f:?}"))?;
        for (col, want) in weights.iter().enumerate() {
            let k = col + 3;
            let letter = m.complex().letter(k) as i64 + 1;
            let got = ambient(&node.table.weights[k], letter);
            ensure(got == want, || format!("w({f:?},{}) = {got:?}", k + 1))?;
        }
    }
    Ok("six F-polynomials and the 14×6 weight table exact".into())
}

fn criterion_3(models: &[Model]) -> Outcome {
    let mut cases = 0;
    for m in models {
        let reports = [check_c_vectors(m), check_g_vectors(m), check_exchange_matrix(m), check_lemmas(m)];
        passed(&reports)?;
        cases += reports.iter().map(|r| r.cases).sum::<usize>();
    }
    Ok(format!("{} (type, c) inputs, {cases} comparisons", models.len()))
}

fn criterion_4(models: &[Model]) -> Outcome {
    let mut cases = 0;
    for m in models {
        let reports = [check_newton_polytopes(m), check_lattice_points(m)];
        passed(&reports)?;
        cases += reports.iter().map(|r| r.cases).sum::<usize>();
    }
    Ok(format!("{} (type, c) inputs, {cases} roots checked", models.len()))
}

fn criterion_5() -> Outcome {
    for n in 1..=4 {
        let r = check_typea_models(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    let mut inputs = 0;
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        for c in coxeter_elements(rs(t).cartan()) {
            let k = Complex::new(rs(t), c.clone()).map_err(|e| e.to_string())?;
            let mut a = k.enumerate_facets().map_err(|e| e.to_string())?;
            let mut b = k.brute_force_facets();
            a.sort();
            b.sort();
            ensure(a == b, || format!("{t} c={c}: BFS {} vs brute force {}", a.len(), b.len()))?;
            inputs += 1;
        }
    }
    let degrees: [(&str, &[u64], u64); 6] = [
        ("A2", &[2, 3], 5),
        ("A3", &[2, 3, 4], 14),
        ("B2", &[2, 4], 6),
        ("G2", &[2, 6], 8),
        ("B3", &[2, 4, 6], 20),
        ("D4", &[2, 4, 4, 6], 50),
    ];
    for (t, degs, expected) in degrees {
        ensure(catalan_from_degrees(degs) == expected, || format!("degree formula for {t}"))?;
        let cartan = CartanMatrix::from_type_str(t).map_err(|e| e.to_string())?;
        for c in coxeter_elements(&cartan) {
            let facets = Complex::new(rs(t), c.clone()).and_then(|k| k.enumerate_facets()).map_err(|e| e.to_string())?;
            let seeds = enumerate_seeds(&cartan, &c).map_err(|e| e.to_string())?;
            ensure(facets.len() as u64 == expected && seeds.len() as u64 == expected, || {
                format!("{t} c={c}: {} facets, {} seeds, expected {expected}", facets.len(), seeds.len())
            })?;
        }
    }
    Ok(format!("A1..A4 three-way F agreement; brute force on {inputs} inputs; Catalan counts"))
}

fn criterion_6() -> Outcome {
    let mut inputs = Vec::new();
    for t in ["A2", "A3"] {
        for c in coxeter_elements(rs(t).cartan()) {
            inputs.push((t.to_string(), c));
        }
    }
    for (t, c) in [("B2", "1,2"), ("B3", "1,2,3"), ("G2", "1,2")] {
        inputs.push((t.to_string(), word(c)));
    }
    for m in models(&inputs)? {
        let newton = check_newton_polytopes(&m);
        let r = check_minkowski_brick(&m, &newton);
        ensure(r.passed(), || r.to_string())?;
    }

    let m = Model::new(rs("A2"), word("1,2")).map_err(|e| e.to_string())?;
    let sum = m.newton_sum().map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<i64>> = sum.vertices().iter().cloned().collect();
    let want: BTreeSet<Vec<i64>> = [[2, 2], [1, 2], [0, 1], [0, 0], [2, 0]].iter().map(|v| v.to_vec()).collect();
    ensure(got == want, || format!("A2 Minkowski sum {got:?}"))?;
    Ok(format!("{} inputs, translation b(AG) recovered; type-A prefix sums match", inputs.len()))
}

fn criterion_7() -> Outcome {
    let mut facets = 0;
    let mut variables = 0;
    for t in ["A2", "A3", "B2", "B3", "G2", "C3"] {
        for c in coxeter_elements(rs(t).cartan()) {
            let m = Model::new(rs(t), c.clone()).map_err(|e| e.to_string())?;
            let k = m.complex();
            let positive: BTreeSet<RootVec> = k.root_system().positive_roots().iter().cloned().collect();
            for node in m.nodes() {
                facets += 1;
                let mut complement: Vec<RootVec> =
                    (0..k.len()).filter(|p| !node.facet.contains(*p)).map(|p| node.table.roots[p].clone()).collect();
                complement.sort();
                let as_set: BTreeSet<RootVec> = complement.iter().cloned().collect();
                ensure(as_set == positive && complement.len() == positive.len(), || {
                    format!("{t} c={c}: complement roots of {}", node.facet)
                })?;
                for (slot, &i) in node.facet.positions().iter().enumerate() {
                    let (next, j) = k.flip(&node.facet, i).map_err(|e| e.to_string())?;
                    let (back, i2) = k.flip(&next, j).map_err(|e| e.to_string())?;
                    ensure(back == node.facet && i2 == i, || format!("{t} c={c}: flip {} of {} is not an involution", i + 1, node.facet))?;
                    let again = node.seed.mutate(slot).and_then(|s| s.mutate(slot)).map_err(|e| e.to_string())?;
                    ensure(again == node.seed, || format!("{t} c={c}: mutation {slot} at {} is not an involution", node.facet))?;
                }
            }
            for (beta, u) in m.variables() {
                if !beta.is_positive() {
                    continue;
                }
                variables += 1;
                let f = f_polynomial(u);
                ensure(f.constant_term() == BigInt::from(1), || format!("{t}: constant term of F for {beta}"))?;
                let top = f.maximal_monomial();
                ensure(top.as_deref() == Some(beta.coords()), || format!("{t}: maximal monomial of F for {beta}: {top:?}"))?;
                let divides = f.exponents().all(|e| e.iter().zip(beta.coords()).all(|(a, b)| 0 <= *a && a <= b));
                ensure(divides, || format!("{t}: a monomial of F for {beta} does not divide y^β"))?;
            }
        }
    }
    let cartan = CartanMatrix::from_type_str("A4").map_err(|e| e.to_string())?;
    let mut seeds = 0;
    let mut by_key = BTreeMap::new();
    for c in coxeter_elements(&cartan) {
        let all = enumerate_seeds(&cartan, &c).map_err(|e| format!("A4 c={c}: {e}"))?;
        seeds += all.len();
        by_key.insert(c.to_string(), all.len());
    }
    ensure(by_key.values().all(|&v| v == 42), || format!("A4 seed counts {by_key:?}"))?;
    Ok(format!("{facets} facets, {variables} F-polynomials, {seeds} A4 seeds with exact division"))
}

fn main() {
    let mut failures = Vec::new();
    let mut report = |id: usize, title: &str, budget: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = match res {
            Ok(s) if took > budget => Err(format!("{s}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match &res {
            Ok(s) => println!("PASS criterion {id} ({title}): {s} [{took:.2?}]"),
            Err(e) => {
                println!("FAIL criterion {id} ({title}): {e} [{took:.2?}]");
                failures.push(id);
            }
        }
    };

    report(1, "A2 golden data", Duration::from_secs(1), &mut criterion_1);
    report(2, "A3 golden data", Duration::from_secs(1), &mut criterion_2);

    let start = Instant::now();
    let built = models(&shared_inputs());
    let build_time = start.elapsed();
    match built {
        Ok(ms) => {
            // Building the shared models counts against the correspondence checks.
            report(3, "correspondence checks", Duration::from_secs(60).saturating_sub(build_time), &mut || criterion_3(&ms));
            report(4, "Newton and lattice checks", Duration::from_secs(600), &mut || criterion_4(&ms));
        }
        Err(e) => {
            report(3, "correspondence checks", Duration::MAX, &mut || Err(e.clone()));
            report(4, "Newton and lattice checks", Duration::MAX, &mut || Err(e.clone()));
        }
    }
    report(5, "oracle equivalence", Duration::from_secs(300), &mut criterion_5);
    report(6, "Minkowski sums and brick polytopes", Duration::from_secs(60), &mut criterion_6);
    report(7, "property suite", Duration::from_secs(60), &mut criterion_7);

    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
