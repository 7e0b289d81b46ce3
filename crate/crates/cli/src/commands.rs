use std::f64::consts::{PI, TAU};
use std::io::Read;

use serde::Deserialize;
use serde_json::{json, Value};

use catchi_core::coxeter::{dot, generate_roots, local_subsystem, CoxeterType};
use catchi_core::lattice::{
    determinant, direct_sum, e8_gram, enumerate_norm_vectors, k3_gram, parse_rational, rat,
    signature, u_gram, GramLattice, Signature,
};
use catchi_core::metric::{
    cat_test, center_and_b, default_t_sequence, tangent_distance_estimate, CatScan, EuclideanPlane,
    TriangleSpec,
};
use catchi_core::model::Curvature;
use catchi_core::singularity::{
    alpha_case, check_weights, cusp_row, cyclic_orientation, dual_cycle, eset_types,
    hyperbolic_triples, n_plus_2, table1, table1_entry, verify_alpha_one, y_projection, ypqr_roots,
    Arm, CycleSeq, ETypePair,
};
use catchi_core::spaces::{
    circle_cat_scan, cone_cat_scan, cone_hypothesis_c, cone_local_geodesic_count,
    crushed_cat_witness, crushed_edge_at_zero_scan, crushed_hypothesis_c, cusp_germ_ratios,
    mesh_bigon, revolution_mesh, Bigon, CircleCone, ConePoint, CrushedHalfPlane, CrushedPoint,
    RevolutionMesh,
};
use catchi_core::Error;

use crate::parse::{parse_floats, parse_vector};
use crate::report::{Check, Report};
use crate::{
    BranchedArgs, CatCheckArgs, Cli, Command, Common, ConeArgs, CoxeterCommand, CrushedArgs,
    CuspMeshArgs, LatticeCommand, LatticeSource, RunError, Sheets, SingularityCommand, SpaceKind,
    TangentArgs, TangentSpace,
};

type Checks = Result<Vec<Check>, RunError>;

pub fn run(cli: &Cli) -> Result<Report, RunError> {
    let c = &cli.common;
    let checks = match &cli.command {
        Command::CatCheck(a) => cat_check(c, a)?,
        Command::Cone(a) => cone(c, a)?,
        Command::BranchedPlane(a) => branched_plane(c, a)?,
        Command::CrushedDemo(a) => crushed_demo(c, a)?,
        Command::CuspMeshDemo(a) => cusp_mesh_demo(a)?,
        Command::TangentEstimate(a) => tangent_estimate(a)?,
        Command::Lattice(l) => lattice(l)?,
        Command::Coxeter(x) => coxeter(x)?,
        Command::Singularities(s) => singularities(s)?,
    };
    let config = json!({
        "common": c,
        "command": &cli.command,
    });
    Ok(Report::new(config, checks, c.seed))
}

fn curvature(chi: f64) -> Result<Curvature, RunError> {
    Ok(Curvature::new(chi)?)
}

/// Finite lengths as numbers, +∞ as the string "inf".
pub fn length_json(l: f64) -> Value {
    if l.is_finite() {
        json!(l)
    } else {
        json!("inf")
    }
}

#[derive(Debug, Deserialize)]
struct TriangleFile {
    vertices: [[f64; 2]; 3],
}

fn read_source(path: &str) -> Result<String, RunError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| RunError::Config(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn verdict_check<P: Clone>(
    name: &str,
    tri: &TriangleSpec<'_, P>,
    chi: Curvature,
    metric: &impl catchi_core::metric::Metric<Point = P>,
    tol: f64,
    extra: Value,
) -> Result<Check, RunError> {
    let verdict = cat_test(tri, chi, metric, tol)?;
    let data = json!({
        "chi": chi.value(),
        "edge_lengths": tri.edge_lengths(metric),
        "samples": tri.samples(),
        "input": extra,
        "verdict": &verdict,
    });
    Ok(Check::new(name, verdict.passed(), data))
}

fn cat_check(c: &Common, a: &CatCheckArgs) -> Checks {
    let file: TriangleFile = serde_json::from_str(&read_source(&a.triangle)?)
        .map_err(|e| RunError::Config(format!("triangle JSON: {e}")))?;
    let chi = curvature(c.chi)?;
    let v = file.vertices;
    let input = json!({"space": a.space, "vertices": v});
    let check = match a.space {
        SpaceKind::Euclidean => {
            let tri = TriangleSpec::from_vertices(&EuclideanPlane, v, c.samples, |p, q| {
                EuclideanPlane::segment(*p, *q)
            })?;
            verdict_check("cat_test", &tri, chi, &EuclideanPlane, c.tol, input)?
        }
        SpaceKind::Cone => {
            let cone = CircleCone::with_circumference(a.circumference)?;
            let tri = cone.triangle(v.map(|[t, theta]| ConePoint::new(t, theta)), c.samples)?;
            let input = json!({"space": a.space, "circumference": length_json(a.circumference), "vertices": v});
            verdict_check("cat_test", &tri, chi, &cone, c.tol, input)?
        }
        SpaceKind::Crushed => {
            let pts = v
                .iter()
                .map(|&[x, y]| {
                    if x == 0.0 {
                        Ok(CrushedPoint::Origin)
                    } else {
                        CrushedPoint::new(x, y)
                    }
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let tri = CrushedHalfPlane::triangle([pts[0], pts[1], pts[2]], c.samples)?;
            verdict_check("cat_test", &tri, chi, &CrushedHalfPlane, c.tol, input)?
        }
    };
    Ok(vec![check])
}

/// Counts of local geodesics between (1, 0) and (1, θ) over a grid of θ.
fn geodesic_uniqueness(l: f64) -> Result<Check, RunError> {
    let width = if l.is_finite() { l } else { 6.0 * PI };
    let mut max_count = 0;
    let mut worst_theta = 0.0;
    for i in 0..256 {
        let theta = width * i as f64 / 256.0;
        let n = cone_local_geodesic_count(l, 0.0, theta)?;
        if n > max_count {
            max_count = n;
            worst_theta = theta;
        }
    }
    Ok(Check::new(
        "unique_geodesics",
        max_count == 1,
        json!({"grid": 256, "max_local_geodesics": max_count, "at_theta": worst_theta}),
    ))
}

fn scan_json(l: f64, chi: Curvature, scan: &CatScan) -> Value {
    json!({"circumference": length_json(l), "chi": chi.value(), "scan": scan})
}

fn cone(c: &Common, a: &ConeArgs) -> Checks {
    let l = a.circumference;
    let chi = curvature(a.cat_test.unwrap_or(c.chi))?;
    let scan = cone_cat_scan(l, chi, a.triangles, c.samples, c.tol, c.seed)?;
    let mut checks = vec![Check::new(
        "cone_cat",
        scan.all_passed(),
        scan_json(l, chi, &scan),
    )];
    if l.is_finite() {
        let circle = circle_cat_scan(l, a.triangles, c.samples, c.tol, c.seed)?;
        let circle_ok = circle.all_passed();
        checks.push(Check::new(
            "circle_cat1",
            circle_ok,
            scan_json(l, Curvature::SPHERE, &circle),
        ));
        if chi == Curvature::FLAT {
            checks.push(Check::new(
                "cone_circle_correspondence",
                circle_ok == scan.all_passed(),
                json!({"cone_cat0": scan.all_passed(), "circle_cat1": circle_ok}),
            ));
        }
    }
    checks.push(geodesic_uniqueness(l)?);
    Ok(checks)
}

fn branched_plane(c: &Common, a: &BranchedArgs) -> Checks {
    let l = match a.sheets {
        Sheets::Finite(k) => TAU * f64::from(k),
        Sheets::Infinite(_) => f64::INFINITY,
    };
    let chi = curvature(c.chi)?;
    let scan = cone_cat_scan(l, chi, a.triangles, c.samples, c.tol, c.seed)?;
    let mut checks = vec![Check::new(
        "cone_cat",
        scan.all_passed(),
        scan_json(l, chi, &scan),
    )];
    let hyp = cone_hypothesis_c(l, a.probes, a.per_probe, a.lambda, c.samples, c.tol, c.seed)?;
    checks.push(Check::new("hypothesis_c", hyp.all_passed(), &hyp));

    // Points half a turn apart: the geodesic runs through the branch point,
    // which is therefore their center.
    let cone = CircleCone::with_circumference(l)?;
    let x = ConePoint::new(1.0, 0.0);
    let y = ConePoint::new(2.0, PI);
    let center = center_and_b(&cone, &[ConePoint::new(0.0, 0.0)], &x, &y)?;
    let ok = (center.b - 3.0).abs() <= c.tol && (center.direct - 3.0).abs() <= c.tol;
    checks.push(Check::new("center_at_branch_point", ok, &center));
    checks.push(geodesic_uniqueness(l)?);
    Ok(checks)
}

fn crushed_germ(y: f64) -> impl Fn(f64) -> CrushedPoint {
    move |t| {
        if t == 0.0 {
            CrushedPoint::Origin
        } else {
            CrushedPoint::Half { x: t, y }
        }
    }
}

fn crushed_demo(c: &Common, a: &CrushedArgs) -> Checks {
    let (tri, witness) = crushed_cat_witness(c.samples)?;
    let exact = witness.measured == 1.0 && witness.comparison == 0.5 && witness.violation == 0.5;
    let verdict = cat_test(&tri, Curvature::FLAT, &CrushedHalfPlane, c.tol)?;
    let mut checks = vec![Check::new(
        "not_cat0_witness",
        exact && !verdict.passed(),
        json!({"witness": witness, "cat_test": verdict}),
    )];
    let scan = crushed_edge_at_zero_scan(a.triangles, c.samples, c.tol, c.seed)?;
    checks.push(Check::new(
        "edge_at_zero_triangles",
        scan.all_passed() && scan.skipped == 0,
        &scan,
    ));
    let est = tangent_distance_estimate(
        crushed_germ(0.0),
        crushed_germ(1.0),
        &CrushedHalfPlane,
        &default_t_sequence(),
    )?;
    checks.push(Check::new(
        "tangent_cone_at_zero",
        (est.estimate - 2.0).abs() <= 1e-6,
        json!({"expected": 2.0, "estimate": est}),
    ));
    let hyp = crushed_hypothesis_c(a.probes, a.per_probe, a.lambda, c.samples, c.tol, c.seed)?;
    checks.push(Check::new("hypothesis_c", hyp.all_passed(), &hyp));
    Ok(checks)
}

fn bigon_on(mesh: &RevolutionMesh, ring: usize) -> Result<Bigon, RunError> {
    Ok(mesh_bigon(
        mesh,
        mesh.vertex(ring, 0),
        mesh.vertex(ring, mesh.nphi() / 2),
    )?)
}

fn bigon_json(mesh: &RevolutionMesh, ring: usize, b: &Bigon) -> Value {
    json!({
        "ring_x": mesh.ring_x(ring),
        "nx": mesh.nx(),
        "nphi": mesh.nphi(),
        "lengths": [b.paths[0].length, b.paths[1].length],
        "path_vertices": [b.paths[0].path.len(), b.paths[1].path.len()],
        "length_ratio": b.length_ratio,
        "separation": b.separation,
        "normalized_separation": b.normalized_separation,
    })
}

fn cusp_mesh_demo(a: &CuspMeshArgs) -> Checks {
    let mesh = revolution_mesh(a.x_min, a.x_max, a.nx, a.nphi)?;
    let ring = mesh.nearest_ring(a.x0);
    let bigon = bigon_on(&mesh, ring)?;
    let mut checks = vec![Check::new(
        "bigon",
        bigon.length_ratio - 1.0 < 0.01 && bigon.normalized_separation > 0.1,
        bigon_json(&mesh, ring, &bigon),
    )];
    if !a.no_refine {
        let fine = revolution_mesh(a.x_min, a.x_max, 2 * a.nx, 2 * a.nphi)?;
        // Ring 2i of the doubled mesh sits at the same x as ring i.
        let fine_bigon = bigon_on(&fine, 2 * ring)?;
        let mut coarse: Vec<f64> = bigon.paths.iter().map(|p| p.length).collect();
        let mut refined: Vec<f64> = fine_bigon.paths.iter().map(|p| p.length).collect();
        coarse.sort_by(f64::total_cmp);
        refined.sort_by(f64::total_cmp);
        let change = coarse
            .iter()
            .zip(&refined)
            .map(|(c, f)| (f - c).abs() / c)
            .fold(0.0, f64::max);
        checks.push(Check::new(
            "refinement",
            change < 0.005,
            json!({"relative_change": change, "refined": bigon_json(&fine, 2 * ring, &fine_bigon)}),
        ));
    }
    if !a.no_germs {
        // Germs half a turn apart. A cone point at the cusp would keep the ratio
        // bounded below; here it shrinks roughly like π·s.
        let germ_mesh = revolution_mesh(0.01, 1.0, 400, 64)?;
        let germs = cusp_germ_ratios(&germ_mesh, 32, &[0.4, 0.2, 0.1, 0.05])?;
        let decreasing = germs.ratios.windows(2).all(|w| w[1].1 < w[0].1);
        let (s_last, r_last) = *germs.ratios.last().expect("four germ distances");
        checks.push(Check::new(
            "cusp_tangent_is_a_ray",
            decreasing && r_last <= 4.0 * s_last,
            json!({"mesh": {"x_min": 0.01, "x_max": 1.0, "nx": 400, "nphi": 64}, "germs": germs}),
        ));
    }
    if let Some(path) = &a.export {
        let text = serde_json::to_string(&mesh.export()).expect("mesh export serializes");
        std::fs::write(path, text)
            .map_err(|e| RunError::Config(format!("writing {}: {e}", path.display())))?;
    }
    Ok(checks)
}

fn tangent_estimate(a: &TangentArgs) -> Checks {
    let ts = default_t_sequence();
    let check = match a.space {
        TangentSpace::Crushed => {
            let est = tangent_distance_estimate(
                crushed_germ(a.y1),
                crushed_germ(a.y2),
                &CrushedHalfPlane,
                &ts,
            )?;
            let expected = if a.y1 == a.y2 { 0.0 } else { 2.0 };
            Check::new(
                "tangent_estimate",
                (est.estimate - expected).abs() <= 1e-6,
                json!({"space": "crushed", "y": [a.y1, a.y2], "expected": expected, "tolerance": 1e-6, "estimate": est}),
            )
        }
        TangentSpace::Euclidean => {
            let th = a.theta;
            let est = tangent_distance_estimate(
                |t| [t, 0.0],
                move |t| [t * th.cos(), t * th.sin()],
                &EuclideanPlane,
                &ts,
            )?;
            let expected = 2.0 * (th / 2.0).sin().abs();
            Check::new(
                "tangent_estimate",
                (est.estimate - expected).abs() <= 1e-8,
                json!({"space": "euclidean", "theta": th, "expected": expected, "tolerance": 1e-8, "estimate": est}),
            )
        }
    };
    Ok(vec![check])
}

fn gram_from_file(path: &std::path::Path) -> Result<GramLattice, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Config(format!("reading {}: {e}", path.display())))?;
    let rows: Vec<Vec<Value>> =
        serde_json::from_str(&text).map_err(|e| RunError::Config(format!("Gram JSON: {e}")))?;
    let gram = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    other => Err(Error::Parse(format!("Gram entry {other}"))),
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(GramLattice::new(gram)?)
}

fn named_lattice(name: &str) -> Result<GramLattice, RunError> {
    let key = name.trim().to_ascii_uppercase();
    if let Some(spec) = key.strip_prefix("Y:") {
        let arms = spec
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| RunError::Config(format!("bad Y triple {spec:?}: {e}")))?;
        let [p, q, r] = arms[..] else {
            return Err(RunError::Config(format!(
                "Y needs three arm lengths, got {spec:?}"
            )));
        };
        return Ok(ypqr_roots(p, q, r)?.root_gram());
    }
    Ok(match key.as_str() {
        "U" => u_gram(),
        "U2" => direct_sum(&[u_gram(), u_gram()]),
        "K3" => k3_gram(),
        "E8" => e8_gram(1),
        "E8-" => e8_gram(-1),
        _ => return Err(RunError::Config(format!("unknown lattice {name:?}"))),
    })
}

fn load_lattice(src: &LatticeSource) -> Result<GramLattice, RunError> {
    match (&src.named, &src.gram) {
        (Some(n), _) => named_lattice(n),
        (None, Some(p)) => gram_from_file(p),
        (None, None) => Err(RunError::Config("give --named or --gram".into())),
    }
}

fn parse_signature(s: &str) -> Result<Signature, RunError> {
    let v = parse_floats(s.trim().trim_start_matches('(').trim_end_matches(')'))
        .map_err(RunError::Config)?;
    match v[..] {
        [a, b, c] if [a, b, c].iter().all(|x| *x >= 0.0 && x.fract() == 0.0) => {
            Ok(Signature::new(a as usize, b as usize, c as usize))
        }
        _ => Err(RunError::Config(format!(
            "signature must be three counts, got {s:?}"
        ))),
    }
}

fn lattice(cmd: &LatticeCommand) -> Checks {
    match cmd {
        LatticeCommand::Signature { source, expect } => {
            let g = load_lattice(source)?;
            let sig = signature(&g);
            let expected = expect.as_deref().map(parse_signature).transpose()?;
            let data = json!({
                "dim": g.dim(),
                "signature": sig.to_string(),
                "determinant": determinant(&g).to_string(),
                "expected": expected.map(|s| s.to_string()),
            });
            Ok(vec![Check::new(
                "signature",
                expected.map_or(true, |e| e == sig),
                data,
            )])
        }
        LatticeCommand::Omega { source, re, im } => {
            let g = load_lattice(source)?;
            let re = parse_vector(re).map_err(RunError::Config)?;
            let im = parse_vector(im).map_err(RunError::Config)?;
            let member = catchi_core::lattice::omega_membership_exact(&g, &re, &im)?;
            let data = json!({
                "signature": signature(&g).to_string(),
                "re_norm": g.norm(&re)?.to_string(),
                "im_norm": g.norm(&im)?.to_string(),
                "cross": g.inner(&re, &im)?.to_string(),
            });
            Ok(vec![Check::new("omega_membership", member, data)])
        }
    }
}

fn coxeter_type(s: &str) -> Result<CoxeterType, RunError> {
    Ok(s.parse::<CoxeterType>()?)
}

fn coxeter(cmd: &CoxeterCommand) -> Checks {
    match cmd {
        CoxeterCommand::Roots { kind } => {
            let kind = coxeter_type(kind)?;
            let rs = generate_roots(kind)?;
            let two = rat(2);
            let mut norms_ok = true;
            for r in &rs.roots {
                norms_ok &= dot(r, r)? == two;
            }
            let mut checks = vec![
                Check::new(
                    "reflection_closure",
                    rs.roots.len() == kind.root_count(),
                    json!({"type": kind, "count": rs.roots.len(), "expected": kind.root_count(), "simple": rs.simple}),
                ),
                Check::new("root_norms", norms_ok, json!({"norm": 2})),
            ];
            if kind.to_string() == "E8" {
                let e = enumerate_norm_vectors(&e8_gram(1), &two, 7)?;
                checks.push(Check::new(
                    "e8_norm2_enumeration",
                    e.complete && e.vectors.len() == 240,
                    json!({"count": e.vectors.len(), "complete": e.complete, "coefficient_bound": 7}),
                ));
            }
            Ok(checks)
        }
        CoxeterCommand::Local { kind, point } => {
            let rs = generate_roots(coxeter_type(kind)?)?;
            let x = parse_vector(point).map_err(RunError::Config)?;
            let local = local_subsystem(&rs, &x)?;
            Ok(vec![Check::new(
                "local_subsystem",
                true,
                json!({"point": local.point, "rank": local.rank, "count": local.roots.len(), "roots": local.roots}),
            )])
        }
    }
}

fn eset(p: usize, q: usize, r: usize) -> Checks {
    let case = alpha_case(p, q, r)?;
    let y = ypqr_roots(p, q, r)?;
    let types = eset_types(p, q, r)?;
    let mut projections = Vec::new();
    for a in Arm::ALL {
        for b in Arm::ALL.into_iter().filter(|&b| b != a) {
            let ty = ETypePair::new(a, b)?;
            let proj = y_projection(p, q, r, ty)?;
            projections.push(json!({
                "type": ty.to_string(),
                "free": types.contains(&ty),
            "norm": y.ambient().norm(&proj.vector)?.to_string(),
            "two_plus_n": n_plus_2(p, q, r, ty)?.to_string(),
            "projection": proj,
            }));
        }
    }
    let unordered: Vec<_> = types
        .iter()
        .copied()
        .filter(|t| t.plus.index() < t.minus.index())
        .collect();
    let mut cross_products = Vec::new();
    for (i, &t1) in unordered.iter().enumerate() {
        for &t2 in &unordered[i + 1..] {
            let (o1, o2) = cyclic_orientation(t1, t2)?;
            let v1 = y_projection(p, q, r, o1)?.vector;
            let v2 = y_projection(p, q, r, o2)?.vector;
            cross_products.push(json!({
                "types": [o1.to_string(), o2.to_string()],
                "inner": y.ambient().inner(&v1, &v2)?.to_string(),
            }));
        }
    }
    let ok = case
        .cross_pairs
        .iter()
        .all(|c| c.alpha_set == [1] && c.third_norm == -2 && c.third_projection_matches)
        && case.same_pairs.iter().all(|s| s.alpha_set.is_empty());
    Ok(vec![Check::new(
        "alpha_sets",
        ok,
        json!({"case": case, "projections": projections, "cross_products": cross_products}),
    )])
}

fn singularities(cmd: &SingularityCommand) -> Checks {
    match cmd {
        SingularityCommand::VerifyAlpha { max_sum } => {
            let rep = verify_alpha_one(*max_sum)?;
            Ok(vec![Check::new("alpha_one", rep.all_ok(), &rep)])
        }
        SingularityCommand::Eset { p, q, r } => eset(*p, *q, *r),
        SingularityCommand::DualCycle { entries } => {
            let c: CycleSeq = entries.join(" ").parse()?;
            let d = dual_cycle(&c)?;
            let dd = dual_cycle(&d)?;
            Ok(vec![Check::new(
                "dual_cycle",
                dd == c,
                json!({"input": c.to_string(), "dual": d.to_string(), "dual_of_dual": dd.to_string()}),
            )])
        }
        SingularityCommand::Row { p, q, r } => {
            let row = cusp_row(*p, *q, *r)?;
            let involution = dual_cycle(&row.d_prime)? == row.c_prime;
            Ok(vec![Check::new("table2_row", involution, &row)])
        }
        SingularityCommand::Table2 { max_sum } => {
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            for [p, q, r] in hyperbolic_triples(*max_sum) {
                let row = cusp_row(p, q, r)?;
                if dual_cycle(&row.d_prime)? != row.c_prime {
                    failures.push(format!("({p},{q},{r})"));
                }
                rows.push(json!({
                    "triple": [p, q, r],
                    "family": row.family,
                    "c": row.c.to_string(),
                    "c_prime": row.c_prime.to_string(),
                    "d_prime": row.d_prime.to_string(),
                    "d": row.d.to_string(),
                    "single_entry": row.single_entry,
                }));
            }
            let data = json!({"max_sum": max_sum, "instances": rows.len(), "failures": failures, "rows": rows});
            Ok(vec![Check::new(
                "table2_regression",
                failures.is_empty(),
                data,
            )])
        }
        SingularityCommand::Weights { label } => {
            let entries = match label {
                Some(l) => vec![table1_entry(l)
                    .ok_or_else(|| RunError::Config(format!("no Table 1 row {l:?}")))?],
                None => table1().iter().collect(),
            };
            entries
                .into_iter()
                .map(|e| {
                    let w = check_weights(e)?;
                    Ok(Check::new(
                        format!("weights_{}", e.label),
                        w.ok,
                        json!({"entry": e, "check": w}),
                    ))
                })
                .collect()
        }
    }
}
