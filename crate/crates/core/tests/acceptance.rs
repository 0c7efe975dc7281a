//! End-to-end acceptance run over a fixed corpus. Runs without the libtest
//! harness so that the verdict lines are always printed.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use georep::blocks::{octahedron, sphere_sn, tunnel};
use georep::builder::{build_r4, encode_f, Representation};
use georep::bundle::read_bundle;
use georep::cli::{cmd_build, cmd_verify, CommandOutcome, DimChoice};
use georep::code::{coordinate_load, find_two_basis, min_representation_dim, two_basis_oracle, LinearCode};
use georep::complex::{cycle_space_of_complex, Complex, Embedding};
use georep::geom::{
    cross, ray_parity, rat, segment_meets_triangle, simplex_intersection, validate_embedding, Rational,
    RationalPoint,
};
use georep::gf2::{self, BitVec};
use georep::graph::{cut_space, cycle_space, graph_from_two_basis, MultiGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6765_6f72_6570;

enum Source {
    Random,
    Cut(MultiGraph),
    Named,
}

struct Instance {
    name: String,
    code: LinearCode,
    source: Source,
}

struct Run {
    build: CommandOutcome,
    verify: Option<CommandOutcome>,
    rep: Option<Representation>,
}

fn random_code(rng: &mut ChaCha8Rng) -> LinearCode {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=8);
    let rows: Vec<BitVec> = (0..d)
        .map(|_| BitVec::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
        .collect();
    LinearCode::from_rows(n, &rows).unwrap()
}

fn random_multigraph(rng: &mut ChaCha8Rng) -> MultiGraph {
    let nv = rng.gen_range(1..=8);
    let m = rng.gen_range(0..=16);
    let mut g = MultiGraph::with_vertices(nv);
    for _ in 0..m {
        g.add_edge(rng.gen_range(0..nv), rng.gen_range(0..nv));
    }
    g
}

fn corpus(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let mut out = Vec::new();
    for k in 0..200 {
        out.push(Instance {
            name: format!("random-{k}"),
            code: random_code(rng),
            source: Source::Random,
        });
    }
    for k in 0..50 {
        let g = random_multigraph(rng);
        out.push(Instance {
            name: format!("cut-{k}"),
            code: cut_space(&g).unwrap().0,
            source: Source::Cut(g),
        });
    }
    let named = [
        ("cycles-K4", cycle_space(&MultiGraph::complete(4))),
        ("cycles-K5", cycle_space(&MultiGraph::complete(5))),
        ("cycles-K33", cycle_space(&MultiGraph::complete_bipartite(3, 3))),
        ("hamming-7-4", LinearCode::hamming_7_4()),
        ("repetition-5", LinearCode::repetition(5)),
        ("even-weight-6", LinearCode::even_weight(6)),
    ];
    for (name, code) in named {
        out.push(Instance {
            name: name.into(),
            code,
            source: Source::Named,
        });
    }
    out
}

fn run_pipeline(work: &Path, inst: &Instance) -> Run {
    let code_file = work.join(format!("{}.code", inst.name));
    fs::write(&code_file, inst.code.to_text()).unwrap();
    let bundle = work.join(&inst.name);
    let build = cmd_build(&code_file, DimChoice::Auto, &bundle);
    if build.exit_code != 0 {
        return Run {
            build,
            verify: None,
            rep: None,
        };
    }
    let verify = cmd_verify(&code_file, &bundle);
    let rep = read_bundle(&bundle).ok();
    Run {
        build,
        verify: Some(verify),
        rep,
    }
}

struct Verdicts {
    failed: Vec<usize>,
}

impl Verdicts {
    fn report(&mut self, n: usize, ok: bool, summary: String, elapsed: Duration) {
        let word = if ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {word} ({summary}; {:.1}s)", elapsed.as_secs_f64());
        if !ok {
            self.failed.push(n);
        }
    }
}

fn note(problems: &mut Vec<String>, msg: String) {
    if problems.len() < 8 {
        println!("    {msg}");
    }
    problems.push(msg);
}

fn kernel_dim(c: &Complex) -> usize {
    cycle_space_of_complex(c).len()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let instances = corpus(&mut rng);
    let work = tempfile::tempdir().unwrap();
    let mut v = Verdicts { failed: Vec::new() };

    // 1: build --dim auto then verify, over the whole corpus
    let start = Instant::now();
    let runs: Vec<Run> = instances.iter().map(|i| run_pipeline(work.path(), i)).collect();
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for (inst, run) in instances.iter().zip(&runs) {
        if run.build.exit_code != 0 {
            note(&mut problems, format!("{}: build exited {}: {}", inst.name, run.build.exit_code, run.build.text.trim()));
        } else if let Some(verify) = &run.verify {
            if verify.exit_code != 0 {
                note(&mut problems, format!("{}: verify exited {}: {}", inst.name, verify.exit_code, verify.text.trim()));
            }
        }
        if run.build.exit_code == 0 && run.rep.is_none() {
            note(&mut problems, format!("{}: bundle unreadable", inst.name));
        }
    }
    let r3 = runs.iter().filter(|r| r.build.json["dim"] == 3).count();
    v.report(
        1,
        problems.is_empty() && elapsed < Duration::from_secs(600),
        format!(
            "{} instances, {} in R^3, {} in R^4, {} failures",
            instances.len(),
            r3,
            instances.len() - r3,
            problems.len()
        ),
        elapsed,
    );

    // 2: the 2-basis search against the exhaustive oracle
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut compared = 0;
    for inst in &instances {
        let c = &inst.code;
        let report = find_two_basis(c);
        if let Some(w) = &report.basis {
            let spans = gf2::span_equal(w, c.basis()).unwrap_or(false);
            let load_ok = coordinate_load(w, c.len()).iter().all(|&l| l <= 2);
            if !spans || !load_ok {
                note(&mut problems, format!("{}: bad witness", inst.name));
            }
        }
        if c.dim() <= 4 && c.len() <= 8 {
            compared += 1;
            let oracle = two_basis_oracle(c).unwrap();
            if oracle.found != report.found {
                note(&mut problems, format!("{}: search {} oracle {}", inst.name, report.found, oracle.found));
            }
        }
    }
    v.report(
        2,
        problems.is_empty(),
        format!("{compared} codes compared with the oracle, {} disagreements", problems.len()),
        start.elapsed(),
    );

    // 3: cut space -> 2-basis -> graph -> cut space
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut graphs = 0;
    for inst in &instances {
        let Source::Cut(g) = &inst.source else { continue };
        graphs += 1;
        let (cut, _) = cut_space(g).unwrap();
        let Some(w) = find_two_basis(&cut).basis else {
            note(&mut problems, format!("{}: no 2-basis found", inst.name));
            continue;
        };
        let back = graph_from_two_basis(&w, cut.len())
            .ok()
            .and_then(|h| cut_space(&h).ok())
            .map(|(c, _)| gf2::span_equal(c.basis(), cut.basis()).unwrap_or(false));
        if back != Some(true) {
            note(&mut problems, format!("{}: round trip changed the code", inst.name));
        }
    }
    v.report(3, problems.is_empty() && graphs == 50, format!("{graphs} graphs"), start.elapsed());

    // 4: non-planar graphs need R^4, K4 does not
    let start = Instant::now();
    let k5 = cycle_space(&MultiGraph::complete(5));
    let k33 = cycle_space(&MultiGraph::complete_bipartite(3, 3));
    let k4 = cycle_space(&MultiGraph::complete(4));
    let ok = !find_two_basis(&k5).found
        && min_representation_dim(&k5) == 4
        && !find_two_basis(&k33).found
        && min_representation_dim(&k33) == 4
        && min_representation_dim(&k4) == 3;
    v.report(
        4,
        ok,
        format!(
            "min-dim K5={} K3,3={} K4={}",
            min_representation_dim(&k5),
            min_representation_dim(&k33),
            min_representation_dim(&k4)
        ),
        start.elapsed(),
    );

    // 5: geometric validity of every R^3 bundle, and of R^4 builds of the
    // small codes
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut r3_checked = 0;
    let mut r4_checked = 0;
    for (inst, run) in instances.iter().zip(&runs) {
        let c = &inst.code;
        let has_two_basis = find_two_basis(c).found;
        let built_dim = run.build.json["dim"].as_u64();
        if has_two_basis {
            r3_checked += 1;
            let geometry_ok = built_dim == Some(3)
                && run
                    .verify
                    .as_ref()
                    .is_some_and(|o| o.json["geometry"]["violations"].as_array().is_some_and(Vec::is_empty));
            if !geometry_ok {
                note(&mut problems, format!("{}: R^3 bundle not valid", inst.name));
            }
        }
        if c.dim() <= 3 && c.len() <= 6 {
            r4_checked += 1;
            let passed = if built_dim == Some(4) {
                run.verify.as_ref().is_some_and(|o| o.exit_code == 0)
            } else {
                build_r4(c, c.basis())
                    .map(|rep| validate_embedding(&rep.complex, &rep.embedding).passed())
                    .unwrap_or(false)
            };
            if !passed {
                note(&mut problems, format!("{}: R^4 embedding not valid", inst.name));
            }
        }
    }
    let elapsed = start.elapsed();
    v.report(
        5,
        problems.is_empty() && elapsed < Duration::from_secs(600),
        format!("{r3_checked} R^3 and {r4_checked} R^4 embeddings, {} invalid", problems.len()),
        elapsed,
    );

    // 6: building-block spectra
    let start = Instant::now();
    let mut spectra = Vec::new();
    let mut timed = |label: &str, f: &dyn Fn() -> usize, expected: usize| {
        let t = Instant::now();
        let got = f();
        let fast = t.elapsed() < Duration::from_secs(1);
        spectra.push((label.to_string(), got, expected, fast));
    };
    timed("octahedron", &|| kernel_dim(&octahedron().complex), 1);
    timed(
        "tunnel",
        &|| {
            let mut c = Complex::new();
            for _ in 0..6 {
                c.add_vertex();
            }
            tunnel(&mut c, [0, 1, 2], [3, 4, 5]).unwrap();
            kernel_dim(&c)
        },
        0,
    );
    for n in [1, 3, 7] {
        timed(&format!("S_{n}"), &|| kernel_dim(&sphere_sn(n).complex), 1);
    }
    timed(
        "S_3 minus a designated face",
        &|| {
            let mut m = sphere_sn(3);
            let t = m.complex.designated_triangle(2).unwrap();
            m.complex.remove_triangle(t).unwrap();
            kernel_dim(&m.complex)
        },
        0,
    );
    let ok = spectra.iter().all(|(_, got, want, fast)| got == want && *fast);
    let summary = spectra
        .iter()
        .map(|(l, got, _, _)| format!("{l}: {got}"))
        .collect::<Vec<_>>()
        .join(", ");
    v.report(6, ok, summary, start.elapsed());

    // 7: f reads back the codeword on the coordinate triangles
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut words = 0;
    let mut rng7 = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for (inst, run) in instances.iter().zip(&runs) {
        let Some(rep) = &run.rep else {
            note(&mut problems, format!("{}: no representation", inst.name));
            continue;
        };
        let Ok(kept) = rep.kept_columns() else {
            note(&mut problems, format!("{}: coordinate map broken", inst.name));
            continue;
        };
        let d = rep.basis.len();
        let mut samples: Vec<BitVec> = rep.basis.clone();
        for _ in 0..20 {
            let pick = BitVec::from_bools(&(0..d).map(|_| rng7.gen_bool(0.5)).collect::<Vec<_>>());
            samples.push(gf2::combine(&pick, &rep.basis, rep.code_len()));
        }
        for c in samples {
            words += 1;
            let read = encode_f(rep, &c)
                .ok()
                .and_then(|f| gf2::puncture(&[f], &kept).ok())
                .map(|p| p[0].clone());
            if read.as_ref() != Some(&c) {
                note(&mut problems, format!("{}: f({c}) reads back {read:?}", inst.name));
            }
        }
    }
    v.report(7, problems.is_empty(), format!("{words} codewords checked"), start.elapsed());

    // 8: the cycle space of every R^3 complex has a 2-basis
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut checked = 0;
    for (inst, run) in instances.iter().zip(&runs) {
        let Some(rep) = &run.rep else { continue };
        if rep.dim() != 3 || inst.code.dim() > 4 {
            continue;
        }
        checked += 1;
        let own = LinearCode::from_rows(rep.complex.num_triangles(), &cycle_space_of_complex(&rep.complex)).unwrap();
        if !two_basis_oracle(&own).map(|r| r.found).unwrap_or(false) {
            note(&mut problems, format!("{}: complex cycle space has no 2-basis", inst.name));
        }
    }
    v.report(8, problems.is_empty() && checked > 0, format!("{checked} complexes"), start.elapsed());

    // 9: ray parity on the octahedron and on one chain of an R^3 build
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut stats = Vec::new();
    let even6 = instances.iter().position(|i| i.name == "even-weight-6").unwrap();
    let mut targets = vec![("octahedron".to_string(), octahedron().into_parts())];
    if let Some(rep) = &runs[even6].rep {
        let mut sub = Complex::new();
        for _ in 0..rep.complex.num_vertices() {
            sub.add_vertex();
        }
        for &t in rep.chains[0].iter() {
            sub.add_triangle(rep.complex.triangle(t).unwrap()).unwrap();
        }
        targets.push(("even-weight-6 chain 1".to_string(), (sub, rep.embedding.clone())));
    } else {
        note(&mut problems, "even-weight-6 was not built".into());
    }
    let mut rng9 = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for (label, (c, e)) in &targets {
        let s = parity_checks(c, e, &mut rng9, &mut problems, label);
        stats.push(format!("{label}: {s}"));
    }
    v.report(9, problems.is_empty(), stats.join("; "), start.elapsed());

    if v.failed.is_empty() {
        println!("acceptance: all 9 criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {:?}", v.failed);
        std::process::exit(1);
    }
}

fn random_rational(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let den = rng.gen_range(1..=97i64);
    let t = rat(rng.gen_range(0..=den), den);
    lo + (hi - lo) * t
}

fn random_direction(rng: &mut ChaCha8Rng) -> RationalPoint {
    loop {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..=50)).collect();
        if c.iter().any(|&x| x != 0) {
            return RationalPoint::from_ints(&c);
        }
    }
}

/// Parities of `x` over random admissible directions, at least five of
/// them. `None` if the point lies on the complex.
fn parities(c: &Complex, e: &Embedding, x: &RationalPoint, rng: &mut ChaCha8Rng) -> Option<Vec<u8>> {
    let mut out = Vec::new();
    for _ in 0..40 {
        match ray_parity(c, e, x, &random_direction(rng)) {
            Ok(p) => out.push(p.parity),
            Err(err) if err.is_retryable() => {}
            Err(_) => return None,
        }
        if out.len() >= 5 {
            break;
        }
    }
    Some(out)
}

fn avoids(c: &Complex, e: &Embedding, a: &RationalPoint, b: &RationalPoint) -> bool {
    c.triangles().all(|(_, verts)| !segment_meets_triangle(a, b, e.triangle(verts)))
}

/// A point inside triangle `t` and the unit (max-norm) normal there.
fn interior_point(e: &Embedding, verts: [usize; 3], rng: &mut ChaCha8Rng) -> (RationalPoint, RationalPoint) {
    let [p0, p1, p2] = e.triangle(verts);
    let w: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = w.iter().sum();
    let weights: Vec<Rational> = w.iter().map(|&x| rat(x, total)).collect();
    let p = RationalPoint::combination(&[p0, p1, p2], &weights);
    let n = cross(&(p1 - p0), &(p2 - p0));
    let unit = n.scale(&(rat(1, 1) / n.max_norm()));
    (p, unit)
}

fn parity_checks(
    c: &Complex,
    e: &Embedding,
    rng: &mut ChaCha8Rng,
    problems: &mut Vec<String>,
    label: &str,
) -> String {
    let used: BTreeSet<usize> = c.triangles().flat_map(|(_, v)| v).collect();
    let mut lo = e.point(*used.iter().next().unwrap()).coords().to_vec();
    let mut hi = lo.clone();
    for &v in &used {
        for (k, x) in e.point(v).coords().iter().enumerate() {
            if *x < lo[k] {
                lo[k] = x.clone();
            }
            if *x > hi[k] {
                hi[k] = x.clone();
            }
        }
    }
    let one = rat(1, 1);
    let lo: Vec<Rational> = lo.iter().map(|x| x - &one).collect();
    let hi: Vec<Rational> = hi.iter().map(|x| x + &one).collect();
    let tris: Vec<[usize; 3]> = c.triangles().map(|(_, v)| v).collect();

    // 100 sample points: half in the bounding box, half just off a face
    let mut samples: Vec<(RationalPoint, u8)> = Vec::new();
    let mut on_complex = 0;
    let mut attempts = 0;
    while samples.len() < 100 && attempts < 1000 {
        attempts += 1;
        let x = if samples.len() % 2 == 0 {
            RationalPoint::new((0..3).map(|k| random_rational(rng, &lo[k], &hi[k])).collect())
        } else {
            let t = tris[rng.gen_range(0..tris.len())];
            let (p, n) = interior_point(e, t, rng);
            let s = rat(rng.gen_range(1..=30), if rng.gen_bool(0.5) { 100 } else { -100 });
            &p + &n.scale(&s)
        };
        match parities(c, e, &x, rng) {
            None => on_complex += 1,
            Some(ps) if ps.len() < 5 => {
                note(problems, format!("{label}: only {} admissible directions at {x}", ps.len()));
            }
            Some(ps) => {
                if ps.iter().any(|&p| p != ps[0]) {
                    note(problems, format!("{label}: parity depends on direction at {x}: {ps:?}"));
                }
                samples.push((x, ps[0]));
            }
        }
    }
    if samples.len() < 100 {
        note(problems, format!("{label}: only {} sample points", samples.len()));
    }
    let inside = samples.iter().filter(|(_, p)| *p == 1).count();

    // straddling pairs at offset 1/1000
    let mut straddles = 0;
    for k in 0..100 {
        let t = tris[k % tris.len()];
        let (p, n) = interior_point(e, t, rng);
        let step = n.scale(&rat(1, 1000));
        let (a, b) = (&p + &step, &p - &step);
        let pa = parities(c, e, &a, rng);
        let pb = parities(c, e, &b, rng);
        match (pa, pb) {
            (Some(pa), Some(pb)) if !pa.is_empty() && !pb.is_empty() => {
                straddles += 1;
                if pa[0] == pb[0] {
                    note(problems, format!("{label}: both sides of triangle {t:?} have parity {}", pa[0]));
                }
            }
            _ => note(problems, format!("{label}: straddling pair at {p} not admissible")),
        }
    }

    // polygonal paths avoiding the complex: one or two legs
    let mut paths = 0;
    for i in 0..samples.len() {
        for j in i + 1..samples.len().min(i + 12) {
            let (x, px) = &samples[i];
            let (y, py) = &samples[j];
            let mid = RationalPoint::new((0..3).map(|k| random_rational(rng, &lo[k], &hi[k])).collect());
            let joined = avoids(c, e, x, y) || (avoids(c, e, x, &mid) && avoids(c, e, &mid, y));
            if joined {
                paths += 1;
                if px != py {
                    note(problems, format!("{label}: {x} and {y} are joined but differ in parity"));
                }
            }
        }
    }
    // the straddling segment does cross its triangle
    let probe = interior_point(e, tris[0], rng);
    let step = probe.1.scale(&rat(1, 1000));
    let crossing = simplex_intersection(&[&(&probe.0 + &step), &(&probe.0 - &step)], &e.triangle(tris[0]));
    if crossing.is_empty() {
        note(problems, format!("{label}: straddling segment misses its triangle"));
    }
    if paths == 0 {
        note(problems, format!("{label}: no joined pairs found"));
    }
    format!(
        "{} points ({inside} inside, {on_complex} rejected on the complex), {straddles} straddling pairs, {paths} joined pairs",
        samples.len()
    )
}
