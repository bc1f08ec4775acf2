use serde_json::{json, Value};

use refsev_core::oracle::{
    enumerate_floor_diagrams, enumerate_markings, floor_relative, floor_severi,
    render_floor_diagram, render_marked_diagram, wick_severi,
};
use refsev_core::severi::{genfun_verify, irreducible_degrees};
use refsev_core::{
    refined_relative, refined_severi, Error, GenfunOrders, HTransversePolygon, LaurentY, Partition,
};

use crate::output::{aligned, value_json, value_text, y1, ym1};
use crate::{Command, Format, Method, Status};

type Res<T> = std::result::Result<T, Error>;

fn fail(e: &Error) -> Status {
    eprintln!("error: {e}");
    Status::from(e)
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
}

/// `None` for absolute degrees.
type Tangencies<'a> = Option<(&'a Partition, &'a Partition)>;

fn evaluate(method: Method, p: &HTransversePolygon, delta: i64, t: Tangencies) -> Res<LaurentY> {
    let (empty, ones) = (Partition::empty(), Partition::ones(p.d_bottom()));
    let (alpha, beta) = t.unwrap_or((&empty, &ones));
    match (method, t) {
        (Method::Fock | Method::All, None) => refined_severi(p, delta),
        (Method::Fock | Method::All, Some(_)) => refined_relative(p, delta, alpha, beta),
        (Method::Floor, None) => floor_severi(p, delta),
        (Method::Floor, Some(_)) => floor_relative(p, delta, alpha, beta),
        (Method::Wick, _) => wick_severi(p, delta, alpha, beta),
    }
}

fn name(m: Method) -> &'static str {
    match m {
        Method::Fock => "fock",
        Method::Floor => "floor",
        Method::Wick => "wick",
        Method::All => "all",
    }
}

/// First half-exponent, in increasing order, where the polynomials differ.
fn first_difference(a: &LaurentY, b: &LaurentY) -> Option<i64> {
    let mut exps: Vec<i64> = a
        .terms()
        .map(|(e, _)| e)
        .chain(b.terms().map(|(e, _)| e))
        .collect();
    exps.sort_unstable();
    exps.dedup();
    exps.into_iter().find(|&e| a.coeff(e) != b.coeff(e))
}

fn exponent(half: i64) -> String {
    if half % 2 == 0 {
        format!("y^{}", half / 2)
    } else {
        format!("y^{}/2", half)
    }
}

fn compute(
    format: Format,
    p: &HTransversePolygon,
    delta: i64,
    t: Tangencies,
    method: Method,
    eval: Option<crate::Eval>,
) -> Status {
    if method == Method::All {
        return crosscheck(format, p, delta, t, Method::All);
    }
    match evaluate(method, p, delta, t) {
        Ok(v) => {
            emit(
                format,
                value_text(&v, eval),
                Value::Object(value_json(&v, eval)),
            );
            Status::Ok
        }
        Err(e) => fail(&e),
    }
}

fn crosscheck(
    format: Format,
    p: &HTransversePolygon,
    delta: i64,
    t: Tangencies,
    method: Method,
) -> Status {
    let others: &[Method] = match method {
        Method::All => &[Method::Floor, Method::Wick],
        Method::Floor => &[Method::Floor],
        Method::Wick => &[Method::Wick],
        Method::Fock => &[],
    };
    let reference = match evaluate(Method::Fock, p, delta, t) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let mut names = vec!["fock"];
    for &m in others {
        let v = match evaluate(m, p, delta, t) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        if let Some(e) = first_difference(&reference, &v) {
            let msg = format!(
                "mismatch: coefficient of {} is {} by fock but {} by {} (fock: {reference}; {}: {v})",
                exponent(e),
                reference.coeff(e),
                v.coeff(e),
                name(m),
                name(m)
            );
            emit(
                format,
                msg.clone(),
                json!({"agree": false, "methods": [name(Method::Fock), name(m)], "message": msg}),
            );
            return Status::Mismatch;
        }
        names.push(name(m));
    }
    let joined = names.join("=");
    emit(
        format,
        format!("{joined}\n{}", value_text(&reference, None)),
        json!({"agree": true, "methods": names, "value": value_json(&reference, None)}),
    );
    Status::Ok
}

fn classes_up_to(max: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in max {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=m).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out.retain(|c| c.iter().any(|&x| x > 0));
    out
}

fn class_label(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn print_rows(format: Format, rows: &[(Vec<u32>, u64, LaurentY)]) {
    match format {
        Format::Json => {
            for (class, delta, v) in rows {
                let mut obj = value_json(v, None);
                obj.insert("class".into(), json!(class));
                obj.insert("delta".into(), json!(delta));
                println!("{}", Value::Object(obj));
            }
        }
        Format::Text => {
            if rows.is_empty() {
                return;
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(c, d, v)| vec![class_label(c), d.to_string(), v.to_string(), y1(v), ym1(v)])
                .collect();
            println!(
                "{}",
                aligned(&["class", "delta", "N(y)", "N(1)", "N(-1)"], &body)
            );
        }
    }
}

fn table(format: Format, range: &crate::Range) -> Status {
    let (family, max) = match range.parse() {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let mut rows = Vec::new();
    for class in classes_up_to(&max) {
        let p = match family.polygon(&class) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        for delta in 0..=range.max_delta {
            match refined_severi(&p, delta as i64) {
                Ok(v) => rows.push((class.clone(), delta, v)),
                Err(e @ Error::GuardExceeded(_)) => {
                    print_rows(format, &rows);
                    eprintln!(
                        "warning: table truncated at class {} delta {delta}: {e}",
                        class_label(&class)
                    );
                    return Status::Guard;
                }
                Err(e) => return fail(&e),
            }
        }
    }
    print_rows(format, &rows);
    Status::Ok
}

fn irreducible(format: Format, range: &crate::Range) -> Status {
    let (family, max) = match range.parse() {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    match irreducible_degrees(family, &max, range.max_delta) {
        Ok(es) => {
            let rows: Vec<_> = es
                .into_iter()
                .map(|e| (e.class, e.delta, e.value))
                .collect();
            print_rows(format, &rows);
            Status::Ok
        }
        Err(e) => fail(&e),
    }
}

fn genfun_check(format: Format, family: &str, orders: GenfunOrders) -> Status {
    let family = match family.parse() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    match genfun_verify(family, orders) {
        Ok(r) => {
            emit(
                format,
                r.to_string(),
                json!({
                    "family": r.family.to_string(),
                    "q": orders.q, "t": orders.t, "s": orders.s,
                    "checked": r.checked,
                    "passed": r.passed(),
                    "mismatch": r.mismatch.as_ref().map(|m| m.to_string()),
                }),
            );
            if r.passed() {
                Status::Ok
            } else {
                Status::Mismatch
            }
        }
        Err(e) => fail(&e),
    }
}

fn polygon_info(format: Format, p: &HTransversePolygon) -> Status {
    let profiles = match refsev_core::combinatorics::divergence_profiles(p.right(), p.left()) {
        Ok(ps) => ps.len(),
        Err(e) => return fail(&e),
    };
    let widths = p.reconstruct_widths();
    let text = [
        format!("polygon: {p}"),
        format!("height: {}", p.height()),
        format!("row widths: {widths:?}"),
        format!("lattice points: {}", p.lattice_point_count()),
        format!("interior points: {}", p.interior_point_count()),
        format!("dim |L|: {}", p.dim()),
        format!("grading cap: {}", p.grading_cap()),
        format!("divergence profiles: {profiles}"),
    ]
    .join("\n");
    emit(
        format,
        text,
        json!({
            "polygon": p.to_string(),
            "d_top": p.d_top(),
            "d_bottom": p.d_bottom(),
            "right": p.right().values(),
            "left": p.left().values(),
            "height": p.height(),
            "widths": widths,
            "lattice_points": p.lattice_point_count(),
            "interior_points": p.interior_point_count(),
            "dim": p.dim(),
            "grading_cap": p.grading_cap(),
            "profiles": profiles,
        }),
    );
    Status::Ok
}

fn render(
    format: Format,
    p: &HTransversePolygon,
    delta: i64,
    index: usize,
    marking: Option<usize>,
    out: &std::path::Path,
) -> Status {
    let diagrams = match enumerate_floor_diagrams(p, delta) {
        Ok(ds) => ds,
        Err(e) => return fail(&e),
    };
    let Some(d) = diagrams.get(index) else {
        return fail(&Error::InvalidParameter(format!(
            "diagram index {index} out of range ({} diagrams)",
            diagrams.len()
        )));
    };
    let svg = match marking {
        None => render_floor_diagram(d),
        Some(k) => {
            let ms = enumerate_markings(d);
            match ms.get(k) {
                Some(m) => render_marked_diagram(m),
                None => {
                    return fail(&Error::InvalidParameter(format!(
                        "marking index {k} out of range ({} markings)",
                        ms.len()
                    )))
                }
            }
        }
    };
    if let Err(e) = std::fs::write(out, svg) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return Status::Domain;
    }
    emit(
        format,
        format!(
            "wrote {} (diagram {index} of {})",
            out.display(),
            diagrams.len()
        ),
        json!({"out": out.display().to_string(), "index": index, "diagrams": diagrams.len(), "marking": marking}),
    );
    Status::Ok
}

pub fn run(command: Command, format: Format) -> Status {
    let polygon = |arg: &crate::PolygonArg| arg.parse();
    match command {
        Command::Compute {
            polygon: arg,
            delta,
            eval,
            method,
        } => match polygon(&arg) {
            Ok(p) => compute(format, &p, delta, None, method, eval),
            Err(e) => fail(&e),
        },
        Command::Relative {
            polygon: arg,
            delta,
            tangency,
            eval,
            method,
        } => {
            let parsed = polygon(&arg).and_then(|p| tangency.parse(&p).map(|t| (p, t)));
            match parsed {
                Ok((p, (a, b))) => compute(format, &p, delta, Some((&a, &b)), method, eval),
                Err(e) => fail(&e),
            }
        }
        Command::Crosscheck {
            polygon: arg,
            delta,
            tangency,
            method,
        } => {
            let relative = tangency.beta.is_some() || !tangency.alpha.trim().is_empty();
            let parsed = polygon(&arg).and_then(|p| tangency.parse(&p).map(|t| (p, t)));
            match parsed {
                Ok((p, (a, b))) => {
                    let t = relative.then_some((&a, &b));
                    crosscheck(format, &p, delta, t, method)
                }
                Err(e) => fail(&e),
            }
        }
        Command::Table { range } => table(format, &range),
        Command::Irreducible { range } => irreducible(format, &range),
        Command::GenfunCheck { family, q, t, s } => {
            genfun_check(format, &family, GenfunOrders { q, t, s })
        }
        Command::PolygonInfo { polygon: arg } => match polygon(&arg) {
            Ok(p) => polygon_info(format, &p),
            Err(e) => fail(&e),
        },
        Command::Render {
            polygon: arg,
            delta,
            index,
            marking,
            out,
        } => match polygon(&arg) {
            Ok(p) => render(format, &p, delta, index, marking, &out),
            Err(e) => fail(&e),
        },
    }
}
