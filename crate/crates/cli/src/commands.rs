use rimtrace_core::conformal::{
    chart_from_map, domain_seminorms, verify_chain_rule, InjectivityCertificate, DEFAULT_COMPOSITION_DEGREE,
    DEFAULT_TRUNCATION_TOLERANCE,
};
use rimtrace_core::corpus::{corpus_all, CorpusEntry, CorpusFilter, Generator, Kind, TrueClass};
use rimtrace_core::extension::PoissonExtension;
use rimtrace_core::seminorms::{check_equivalence, default_grid, seminorm_trace, GaussPoly};
use rimtrace_core::smoothness::{
    arc_convergence_check, arc_decay_check, arc_window, classify_ap_on, radial_sweep, ApClass, Verdict,
};
use rimtrace_core::{
    AnalyticDiskMap, ArcExtension, BoundaryTrace, ChainRuleSystem, Complex64, Composition, Error, PowerSeries,
    Smoothness,
};
use serde_json::{json, Map, Value};

use crate::config::{check_radii, Params};
use crate::spec::{resolve, Input};
use crate::{CliError, Failure, Outcome, Status, Table};

pub(crate) fn dispatch(name: &str, p: &mut Params) -> Result<Outcome, Failure> {
    let plain = |e: CliError| (e, Map::new());
    match name {
        "extend" => extend(p).map_err(plain),
        "sweep" => sweep(p).map_err(plain),
        "classify" => classify(p).map_err(plain),
        "arc-decay" => arc_decay(p).map_err(plain),
        "arc-converge" => arc_converge(p).map_err(plain),
        "seminorms" => seminorms(p).map_err(plain),
        "chain-polys" => chain_polys(p).map_err(plain),
        "conformal-verify" => conformal_verify(p),
        "corpus" => corpus(p).map_err(plain),
        _ => unreachable!("clap only yields known subcommands"),
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

fn cplx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Converges => "converges",
        Verdict::Diverges => "diverges",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn summary(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn input(p: &Params) -> Result<Input, CliError> {
    resolve(p.spec()?, p.degree)
}

fn extend(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("extend", &["spec", "z", "order", "grid", "degree"])?;
    let f = input(p)?;
    let (x, y) = Params::pair(&p.z, "--z")?.ok_or_else(|| CliError::Config("missing --z".into()))?;
    let z = Complex64::new(x, y);
    let order = *p.order.get_or_insert(0);
    let (value, direct) = match &f {
        Input::Arc(u) => (ArcExtension::new(u.clone()).eval(order, z)?, None),
        Input::Trace { trace, series: None } => (dtheta(PoissonExtension::new(trace.clone()), order, z)?, None),
        _ => {
            let s = f.series().expect("series-backed input");
            let m = *p.grid.get_or_insert_with(|| default_grid(s));
            let trace = BoundaryTrace::from_series(s, 1.0, m)?;
            let trace = if s.assumed_radius() > 1.0 { trace.with_claim(Smoothness::Unbounded) } else { trace };
            (dtheta(PoissonExtension::new(trace), order, z)?, Some(angular_direct(s, order, z)?))
        }
    };
    let mut s = json!({ "value": { "re": value.re, "im": value.im }, "order": order });
    if let Some(d) = direct {
        s["direct"] = json!({ "re": d.re, "im": d.im });
    }
    Ok(Outcome {
        status: Status::Ok,
        result: s.clone(),
        summary: summary(s),
        table: Table { header: vec!["re", "im", "order"], rows: vec![vec![num(value.re), num(value.im), order.to_string()]] },
    })
}

fn dtheta(ext: PoissonExtension, order: usize, z: Complex64) -> rimtrace_core::Result<Complex64> {
    if order == 0 {
        ext.eval(z)
    } else {
        Ok(ext.eval_dtheta(order, z)?.value)
    }
}

// ∂^l/∂θ^l f(z) from complex derivatives via the chain-rule polynomials
fn angular_direct(f: &PowerSeries, l: usize, z: Complex64) -> rimtrace_core::Result<Complex64> {
    if l == 0 {
        return f.eval(z);
    }
    let sys = ChainRuleSystem::new(l)?;
    let derivs = (0..=l).map(|k| f.derivative(k).eval(z)).collect::<rimtrace_core::Result<Vec<_>>>()?;
    Ok(sys.angular_from_complex(l, z, &derivs))
}

fn sweep(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys(
        "sweep",
        &["spec", "orders", "radii", "j_min", "j_max", "grid", "degree", "alpha_div", "max_residual", "resolve_fraction"],
    )?;
    let f = input(p)?;
    let f = f.require_series("sweep")?;
    let th = p.thresholds()?;
    let radii = p.radii.get_or_insert_with(|| th.radii()).clone();
    check_radii(&radii)?;
    let orders = p.orders.get_or_insert_with(|| vec![0, 1, 2]).clone();
    let m = *p.grid.get_or_insert_with(|| default_grid(f));
    let rep = radial_sweep(f, &orders, &radii, m, &th)?;
    let verdicts: Vec<&str> = rep.verdicts.iter().map(|v| verdict(*v)).collect();
    let mut rows = Vec::new();
    for (i, l) in rep.orders.iter().enumerate() {
        for (j, r) in rep.radii.iter().enumerate() {
            rows.push(vec![l.to_string(), num(*r), num(rep.sup_errors[i][j]), num(rep.sup_norms[i][j])]);
        }
    }
    let status = if rep.verdicts.contains(&Verdict::Inconclusive) { Status::Inconclusive } else { Status::Ok };
    Ok(Outcome {
        status,
        summary: summary(json!({
            "orders": rep.orders,
            "verdicts": verdicts,
            "error_exponents": rep.error_exponents,
            "growth_exponents": rep.growth_exponents,
        })),
        result: json!({
            "orders": rep.orders,
            "radii": rep.radii,
            "reference_radius": rep.reference_radius,
            "grid": rep.grid,
            "sup_errors": rep.sup_errors,
            "sup_norms": rep.sup_norms,
            "error_exponents": rep.error_exponents,
            "growth_exponents": rep.growth_exponents,
            "verdicts": verdicts,
            "rim_spectral_gap": rep.rim_spectral_gap,
        }),
        table: Table { header: vec!["order", "radius", "sup_error", "sup_norm"], rows },
    })
}

fn class_json(c: ApClass) -> Value {
    match c {
        ApClass::NotContinuous => json!({ "class": "not-continuous", "p_hat": null, "capped": false }),
        ApClass::Finite(p) => json!({ "class": "finite", "p_hat": p, "capped": false }),
        ApClass::Capped(p) => json!({ "class": "capped", "p_hat": p, "capped": true }),
        ApClass::Inconclusive => json!({ "class": "inconclusive", "p_hat": null, "capped": false }),
    }
}

fn classify(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys(
        "classify",
        &["spec", "p_max", "grid", "degree", "j_min", "j_max", "alpha_div", "max_residual", "resolve_fraction"],
    )?;
    let f = input(p)?;
    let f = f.require_series("classify")?;
    let th = p.thresholds()?;
    let p_max = *p.p_max.get_or_insert(4);
    let m = *p.grid.get_or_insert_with(|| default_grid(f));
    let c = classify_ap_on(f, p_max, &th, m, None)?;
    let mut rows = Vec::new();
    for o in &c.orders {
        for (j, r) in c.radii.iter().enumerate() {
            rows.push(vec![o.order.to_string(), num(*r), num(o.sup_norms[j]), o.resolved[j].to_string()]);
        }
    }
    let orders: Vec<Value> = c
        .orders
        .iter()
        .map(|o| {
            json!({
                "order": o.order,
                "verdict": verdict(o.verdict),
                "slope": o.slope,
                "residual": o.residual,
                "forced": o.forced,
                "sup_norms": o.sup_norms,
                "resolved": o.resolved,
            })
        })
        .collect();
    let inconclusive = c.inconclusive_count();
    let mut s = class_json(c.class);
    s["inconclusive"] = inconclusive.into();
    let status =
        if c.class == ApClass::Inconclusive || inconclusive > 0 { Status::Inconclusive } else { Status::Ok };
    Ok(Outcome {
        status,
        summary: summary(s.clone()),
        result: json!({ "classification": s, "p_max": p_max, "radii": c.radii, "grid": c.grid, "orders": orders }),
        table: Table { header: vec!["order", "radius", "sup_norm", "resolved"], rows },
    })
}

fn arc_decay(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("arc-decay", &["spec", "window", "order", "radii", "points", "degree"])?;
    let f = input(p)?;
    let u = f.require_arc("arc-decay")?;
    let window = Params::pair(&p.window, "--window")?.ok_or_else(|| CliError::Config("missing --window".into()))?;
    let order = *p.order.get_or_insert(1);
    let radii = p.radii.get_or_insert_with(|| vec![0.9, 0.99, 0.999, 0.9999]).clone();
    check_radii(&radii)?;
    let n = *p.points.get_or_insert(61);
    let rep = arc_decay_check(u, window, order, &radii, n)?;
    let rows = rep
        .radii
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let bound = rep.bounds.as_ref().map_or(String::new(), |b| num(b[j]));
            vec![num(*r), num(rep.sups[j]), bound]
        })
        .collect();
    let s = json!({ "violations": rep.violations, "decreasing": rep.decreasing, "sups": rep.sups, "bounds": rep.bounds });
    Ok(Outcome {
        status: Status::Ok,
        summary: summary(s),
        result: json!({
            "order": rep.order,
            "window": [rep.window.0, rep.window.1],
            "radii": rep.radii,
            "sups": rep.sups,
            "bounds": rep.bounds,
            "separation": rep.separation,
            "violations": rep.violations,
            "decreasing": rep.decreasing,
        }),
        table: Table { header: vec!["radius", "sup", "bound"], rows },
    })
}

fn arc_converge(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("arc-converge", &["spec", "p", "orders", "window", "radii", "grid", "points", "degree"])?;
    let f = input(p)?;
    let u = f.require_arc("arc-converge")?;
    let smooth = *p.p.get_or_insert(2);
    let orders = p.orders.get_or_insert_with(|| (0..smooth.max(1)).collect()).clone();
    let window = match Params::pair(&p.window, "--window")? {
        Some(w) => w,
        None => {
            let w = arc_window(u.arc());
            p.window = Some(vec![w.0, w.1]);
            w
        }
    };
    let radii = p.radii.get_or_insert_with(|| vec![0.9, 0.99, 0.999]).clone();
    check_radii(&radii)?;
    let m = *p.grid.get_or_insert(2048);
    let n = *p.points.get_or_insert(64);
    let mut rows = Vec::new();
    let mut per_order = Vec::new();
    for &l in &orders {
        let rep = arc_convergence_check(u, smooth, l, window, &radii, m, n)?;
        for (j, r) in rep.radii.iter().enumerate() {
            rows.push(vec![l.to_string(), num(*r), num(rep.sup_errors[j]), num(rep.b_sups[j])]);
        }
        per_order.push(json!({
            "order": l,
            "sup_errors": rep.sup_errors,
            "b_sups": rep.b_sups,
            "decreasing": rep.decreasing,
            "points": rep.points,
            "warning": rep.warning,
        }));
    }
    let s = json!({
        "decreasing": per_order.iter().map(|o| o["decreasing"].clone()).collect::<Vec<_>>(),
        "final_errors": per_order.iter().map(|o| o["sup_errors"].as_array().and_then(|a| a.last()).cloned()).collect::<Vec<_>>(),
        "warning": per_order.iter().any(|o| o["warning"] == true),
    });
    Ok(Outcome {
        status: Status::Ok,
        summary: summary(s),
        result: json!({ "window": [window.0, window.1], "radii": radii, "orders": per_order }),
        table: Table { header: vec!["order", "radius", "sup_error", "b_sup"], rows },
    })
}

fn seminorms(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("seminorms", &["spec", "function", "p", "grid", "policy", "degree"])?;
    let f = input(p)?;
    let order = *p.p.get_or_insert(3);
    match &f {
        Input::Chart(phi) => {
            let target = p.function.get_or_insert_with(|| "corpus:monomial_1".into()).clone();
            let target = resolve(&target, None)?;
            let target = target.require_series("seminorms --function")?;
            let m = *p.grid.get_or_insert(1024);
            let degree = *p.degree.get_or_insert(DEFAULT_COMPOSITION_DEGREE);
            let map = AnalyticDiskMap::new(phi.clone())?;
            let chart = chart_from_map(map, m)?;
            let comp = Composition::new(target, chart.map(), degree, DEFAULT_TRUNCATION_TOLERANCE)?;
            let d = domain_seminorms(&comp, &chart, order)?;
            let rows = d.vector.values.iter().enumerate().map(|(l, v)| vec![l.to_string(), num(*v)]).collect();
            let s = json!({ "domain_seminorms": d.vector.values, "warning": d.warning });
            Ok(Outcome {
                status: Status::Ok,
                summary: summary(s.clone()),
                result: json!({ "domain_seminorms": d.vector.values, "warning": d.warning, "tail_estimate": comp.tail_estimate }),
                table: Table { header: vec!["order", "domain_seminorm"], rows },
            })
        }
        Input::Trace { trace, series: None } => {
            if p.policy.is_some() {
                return Err(CliError::Config("--policy applies to series specs only".into()));
            }
            let vals = (0..=order).map(|l| seminorm_trace(trace, l)).collect::<rimtrace_core::Result<Vec<_>>>()?;
            let g: Vec<f64> = vals.iter().map(|v| v.value).collect();
            let warning = vals.iter().any(|v| v.warning);
            let rows = g.iter().enumerate().map(|(l, v)| vec![l.to_string(), String::new(), num(*v)]).collect();
            let s = json!({ "g_seminorms": g, "warning": warning });
            Ok(Outcome {
                status: Status::Ok,
                summary: summary(s.clone()),
                result: s,
                table: Table { header: vec!["order", "f_seminorm", "g_seminorm"], rows },
            })
        }
        Input::Arc(_) => Err(CliError::Spec("seminorms needs a series, trace or chart spec".into())),
        _ => {
            let s = f.series().expect("series-backed input");
            let policy = p.policy()?;
            let m = *p.grid.get_or_insert_with(|| default_grid(s));
            let rep = check_equivalence(s, order, m, policy)?;
            let rows = (0..=order)
                .map(|l| vec![l.to_string(), num(rep.f_norms.get(l)), num(rep.g_norms.get(l))])
                .collect();
            let sm = json!({
                "holds": rep.holds(),
                "min_residual": rep.min_residual(),
                "proxy": rep.f_norms.proxy,
                "f_seminorms": rep.f_norms.values,
                "g_seminorms": rep.g_norms.values,
            });
            Ok(Outcome {
                status: Status::Ok,
                summary: summary(sm.clone()),
                result: json!({
                    "equivalence": sm,
                    "radius": rep.f_norms.radius,
                    "grid": rep.f_norms.grid,
                    "zeroth": rep.zeroth,
                    "f_by_g": rep.f_by_g,
                    "g_by_f": rep.g_by_f,
                }),
                table: Table { header: vec!["order", "f_seminorm", "g_seminorm"], rows },
            })
        }
    }
}

// exact integers as JSON numbers when they fit, strings otherwise
fn int(n: impl ToString) -> Value {
    let s = n.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn poly_json(k: usize, l: usize, poly: &GaussPoly) -> Value {
    match poly.i_power_form() {
        Some((tag, coeffs)) => json!({ "k": k, "l": l, "i_power": tag, "coeffs": coeffs.iter().map(int).collect::<Vec<_>>() }),
        None => json!({
            "k": k,
            "l": l,
            "i_power": null,
            "coeffs": poly.coeffs().iter().map(|c| json!([int(&c.re), int(&c.im)])).collect::<Vec<_>>(),
        }),
    }
}

fn chain_polys(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("chain-polys", &["p"])?;
    let order = *p.p.get_or_insert(3);
    let sys = ChainRuleSystem::new(order)?;
    let (mut pj, mut qj, mut rows) = (Vec::new(), Vec::new(), Vec::new());
    for l in 1..=order {
        for k in 1..=l {
            for (family, poly, out) in [("P", sys.p(k, l), &mut pj), ("Q", sys.q(k, l), &mut qj)] {
                out.push(poly_json(k, l, poly));
                for (j, c) in poly.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    rows.push(vec![family.to_string(), k.to_string(), l.to_string(), j.to_string(), c.re.to_string(), c.im.to_string()]);
                }
            }
        }
    }
    let identity = sys.composition_is_identity();
    Ok(Outcome {
        status: Status::Ok,
        summary: summary(json!({ "p": order, "composition_identity": identity, "polynomials": pj.len() + qj.len() })),
        result: json!({
            "p": order,
            "variable_p": "z",
            "variable_q": "w = e^{-it}",
            "P": pj,
            "Q": qj,
            "composition_identity": identity,
        }),
        table: Table { header: vec!["family", "k", "l", "power", "re", "im"], rows },
    })
}

fn conformal_verify(p: &mut Params) -> Result<Outcome, Failure> {
    let plain = |e: CliError| (e, Map::new());
    p.check_keys("conformal-verify", &["spec", "function", "fd_step", "grid", "degree", "p"]).map_err(plain)?;
    let phi = input(p).map_err(plain)?;
    let phi = phi.require_series("conformal-verify").map_err(plain)?.clone();
    let target = p.function.get_or_insert_with(|| "corpus:monomial_2".into()).clone();
    let target = resolve(&target, None).map_err(plain)?;
    let target = target.require_series("conformal-verify --function").map_err(plain)?;
    let h = *p.fd_step.get_or_insert(1e-4);
    let m = *p.grid.get_or_insert(1024);
    let degree = *p.degree.get_or_insert(DEFAULT_COMPOSITION_DEGREE);
    let order = *p.p.get_or_insert(2);

    let map = AnalyticDiskMap::new(phi).map_err(|e| {
        let extra = match &e {
            Error::VanishingDerivative { at, modulus } => {
                json!({ "accepted": false, "reason": "vanishing-derivative", "witness": cplx(*at), "modulus": modulus })
            }
            Error::SelfIntersection { first, second, point } => json!({
                "accepted": false,
                "reason": "self-intersection",
                "segments": [first, second],
                "witness": cplx(*point),
            }),
            _ => json!({ "accepted": false }),
        };
        (CliError::Core(e), summary(extra))
    })?;
    let certificate = match map.certificate() {
        InjectivityCertificate::VerifiedOnGrid { segments } => json!({ "verified_on_grid": segments }),
        InjectivityCertificate::Asserted => json!("asserted"),
    };
    let min_derivative = map.min_derivative();
    let chart = chart_from_map(map, m).map_err(|e| plain(e.into()))?;
    let d1 = verify_chain_rule(target, &chart, h).map_err(|e| plain(e.into()))?;
    let d2 = verify_chain_rule(target, &chart, h / 2.0).map_err(|e| plain(e.into()))?;
    let comp = Composition::new(target, chart.map(), degree, DEFAULT_TRUNCATION_TOLERANCE).map_err(|e| plain(e.into()))?;
    let dn = domain_seminorms(&comp, &chart, order).map_err(|e| plain(e.into()))?;

    let rows = (0..chart.len())
        .map(|j| {
            let (g, dg) = (chart.gamma()[j], chart.dgamma()[j]);
            vec![num(chart.angle(j)), num(g.re), num(g.im), num(dg.re), num(dg.im)]
        })
        .collect();
    let s = json!({
        "accepted": true,
        "certificate": certificate,
        "min_derivative": min_derivative,
        "chain_rule_discrepancy": d1,
        "halving_ratio": d1 / d2,
        "domain_seminorms": dn.vector.values,
    });
    Ok(Outcome {
        status: Status::Ok,
        summary: summary(s.clone()),
        result: json!({
            "verification": s,
            "fd_step": h,
            "discrepancy_half_step": d2,
            "max_modulus": chart.max_modulus(),
            "composition_degree": comp.degree,
            "tail_estimate": comp.tail_estimate,
            "seminorm_warning": dn.warning,
        }),
        table: Table { header: vec!["t", "re_gamma", "im_gamma", "re_dgamma", "im_dgamma"], rows },
    })
}

fn class_label(c: Option<TrueClass>) -> Value {
    match c {
        None => Value::Null,
        Some(TrueClass::Infinite) => "infinite".into(),
        Some(TrueClass::Exact(p)) => p.into(),
        Some(TrueClass::NotContinuous) => "not-continuous".into(),
        Some(TrueClass::Rejected) => "rejected".into(),
    }
}

fn entry_json(e: &CorpusEntry) -> Value {
    let series = |f: &PowerSeries| {
        json!({
            "coeffs": f.coeffs().iter().map(|c| cplx(*c)).collect::<Vec<_>>(),
            "radius": f.assumed_radius().is_finite().then(|| f.assumed_radius()),
        })
    };
    let generator = match &e.generator {
        Generator::Series(f) => json!({ "series": series(f) }),
        Generator::Chart(f) => json!({ "chart": series(f) }),
        Generator::Trace { trace, series: s } => json!({
            "trace": {
                "samples": trace.samples().iter().map(|c| cplx(*c)).collect::<Vec<_>>(),
                "series": s.as_ref().map(series),
            }
        }),
        Generator::Arc(u) => json!({
            "arc": {
                "a": u.arc().a(),
                "b": u.arc().b(),
                "samples": u.samples().iter().map(|c| cplx(*c)).collect::<Vec<_>>(),
                "jets_a": u.jets().map(|j| j.at_a().iter().map(|c| cplx(*c)).collect::<Vec<_>>()),
                "jets_b": u.jets().map(|j| j.at_b().iter().map(|c| cplx(*c)).collect::<Vec<_>>()),
            }
        }),
    };
    json!({
        "name": e.name,
        "kind": e.kind.as_str(),
        "note": e.note,
        "class": class_label(e.truth.class),
        "class_derivation": e.truth.class_derivation,
        "facts": e.truth.facts.iter().map(|f| json!({
            "quantity": f.quantity.label(),
            "value": f.value,
            "derivation": f.derivation,
        })).collect::<Vec<_>>(),
        "generator": generator,
    })
}

fn corpus(p: &mut Params) -> Result<Outcome, CliError> {
    p.check_keys("corpus", &["kind", "class_min", "class_max"])?;
    let kind = match p.kind.as_deref() {
        None => None,
        Some(k) => Some(Kind::parse(k).ok_or_else(|| CliError::Config(format!("unknown kind {k:?}")))?),
    };
    let filter = CorpusFilter { kind, class_min: p.class_min, class_max: p.class_max };
    let entries = corpus_all(&filter)?;
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let rows = entries
        .iter()
        .map(|e| {
            let class = match class_label(e.truth.class) {
                Value::Null => String::new(),
                Value::String(s) => s,
                v => v.to_string(),
            };
            vec![e.name.clone(), e.kind.as_str().to_string(), class, e.note.to_string()]
        })
        .collect();
    Ok(Outcome {
        status: Status::Ok,
        summary: summary(json!({ "count": entries.len(), "names": names })),
        result: json!({ "entries": entries.iter().map(entry_json).collect::<Vec<_>>() }),
        table: Table { header: vec!["name", "kind", "class", "note"], rows },
    })
}
