use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};
use sylow_branching::combinatorics::alpha;
use sylow_branching::lr::star_product;
use sylow_branching::oracle::{degree_set, partial_max, restrict as restrict_to, DegreeSet, Method};
use sylow_branching::partitions::enumerate_partitions;
use sylow_branching::theorem::{
    cell_text, omega_predicted, omega_predicted_recursive, omega_ratio, render_table,
    OmegaAnswer, TableFormat,
};
use sylow_branching::{wreath, BoxSpec, Partition};

use crate::cache::{level_of, Cache};
use crate::{Failure, Format, RunConfig};

pub const TABLE1_COLUMNS: [u64; 4] = [3, 9, 27, 81];
pub const TABLE2_COLUMNS: [u64; 5] = [30, 33, 36, 54, 108];

pub struct Context {
    pub cache: Cache,
    pool: rayon::ThreadPool,
}

impl Context {
    pub fn new(cfg: &RunConfig) -> Result<Self, Failure> {
        let cache = match (&cfg.cache_dir, cfg.no_cache) {
            (Some(dir), false) => Cache::open(dir),
            (None, false) => default_cache_dir().map_or_else(Cache::disabled, |d| Cache::open(&d)),
            (_, true) => Cache::disabled(),
        };
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cfg.jobs {
            if j == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            builder = builder.num_threads(j);
        }
        let pool = builder
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
        Ok(Context { cache, pool })
    }

    /// Degree sets of all `lambdas`, in input order. Cache misses are
    /// computed on the worker pool.
    pub fn degree_sets(
        &mut self,
        lambdas: &[Partition],
        p: u64,
        method: Method,
    ) -> Result<Vec<DegreeSet>, Failure> {
        let missing: Vec<&Partition> = lambdas
            .iter()
            .filter(|l| self.cache.get(p, l).is_none())
            .collect();
        let computed: Vec<DegreeSet> = self.pool.install(|| {
            missing
                .par_iter()
                .map(|l| degree_set(l, p, method))
                .collect::<Result<_, _>>()
        })?;
        for (l, set) in missing.iter().zip(&computed) {
            self.cache.insert(p, l, set);
        }
        Ok(lambdas
            .iter()
            .map(|l| self.cache.get(p, l).cloned())
            .zip(lambdas)
            .map(|(hit, l)| match hit {
                Some(s) => s,
                None => {
                    let i = missing.iter().position(|m| *m == l).expect("computed");
                    computed[i].clone()
                }
            })
            .collect())
    }

    /// Brute-force `Ω_n^k`, reverse-lexicographic.
    pub fn omega(&mut self, n: usize, p: u64, k: u64, method: Method) -> Result<Vec<Partition>, Failure> {
        let all = enumerate_partitions(n);
        let sets = self.degree_sets(&all, p, method)?;
        Ok(all
            .into_iter()
            .zip(sets)
            .filter(|(_, s)| s.contains(k))
            .map(|(l, _)| l)
            .collect())
    }
}

fn default_cache_dir() -> Option<std::path::PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(Into::into)
        .or_else(|| std::env::var_os("HOME").map(|h| std::path::PathBuf::from(h).join(".cache")))?;
    Some(base.join("sylow"))
}

/// Strict partition literal: comma-separated positive parts, weakly
/// decreasing, with `a^b` for `b` copies of `a`.
pub fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let t = s.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '^') {
        return Err(Failure::Partition(format!(
            "malformed partition literal {s:?} (expected e.g. 8,1 or 2^3,1)"
        )));
    }
    t.parse().map_err(|e: sylow_branching::Error| Failure::Partition(e.to_string()))
}

/// `B_n(t)`, `B_{n}(t)` or `n:t`.
pub fn parse_box(s: &str) -> Result<BoxSpec, Failure> {
    let bad = || Failure::Usage(format!("malformed box set {s:?} (expected B_n(t) or n:t)"));
    let t = s.trim();
    let (n, side) = if let Some(rest) = t.strip_prefix("B_") {
        let (n, side) = rest.split_once('(').ok_or_else(bad)?;
        let n = n.trim_start_matches('{').trim_end_matches('}');
        (n, side.strip_suffix(')').ok_or_else(bad)?)
    } else {
        t.split_once(':').ok_or_else(bad)?
    };
    let n = n.trim().parse().map_err(|_| bad())?;
    let side = side.trim().parse().map_err(|_| bad())?;
    Ok(BoxSpec::new(n, side))
}

pub fn set_literal(set: &[Partition]) -> String {
    if set.is_empty() {
        return "∅".into();
    }
    let items: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// The box set equal to `set`, if there is one.
pub fn as_box(n: usize, set: &[Partition]) -> Option<BoxSpec> {
    let t = set.iter().map(|l| l.first()).max()?;
    let b = BoxSpec::new(n, t);
    (b.members() == set).then_some(b)
}

fn parts(set: &[Partition]) -> Vec<Vec<usize>> {
    set.iter().map(|l| l.parts().to_vec()).collect()
}

fn json_line(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn answer_text(a: &OmegaAnswer, format: Format) -> String {
    match format {
        Format::Json => json_line(&json!(a)),
        Format::Csv => format!(
            "n,k,T,empty\n{},{},{},{}",
            a.n,
            a.k,
            a.side().map(|t| t.to_string()).unwrap_or_default(),
            a.is_empty()
        ),
        Format::Markdown => cell_text(a, false),
        Format::Latex => cell_text(a, true),
        Format::Text => a.to_string(),
    }
}

pub fn predict(cfg: &RunConfig, n: u64, k: u64, recursive: bool) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let a = if recursive {
        omega_predicted_recursive(n, k, cfg.p)?
    } else {
        omega_predicted(n, k, cfg.p)?
    };
    println!("{}", answer_text(&a, cfg.format));
    Ok(())
}

pub fn table(cfg: &RunConfig, which: u8, columns: &[u64], k_max: Option<u64>) -> Result<(), Failure> {
    let (columns, default_k) = if columns.is_empty() {
        if cfg.p != 3 {
            return Err(Failure::Usage(
                "the published tables are for p = 3; pass --columns for other primes".into(),
            ));
        }
        match which {
            1 => (TABLE1_COLUMNS.to_vec(), 14),
            _ => (TABLE2_COLUMNS.to_vec(), 18),
        }
    } else {
        if columns.contains(&0) {
            return Err(Failure::Usage("columns must be positive".into()));
        }
        let top = columns
            .iter()
            .map(|&n| alpha(n, cfg.p))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        (columns.to_vec(), top + 1)
    };
    let format = match cfg.format {
        Format::Text | Format::Markdown => TableFormat::Markdown,
        Format::Csv => TableFormat::Csv,
        Format::Json => TableFormat::Json,
        Format::Latex => TableFormat::Latex,
    };
    print!("{}", render_table(&columns, k_max.unwrap_or(default_k), cfg.p, format)?);
    Ok(())
}

pub fn restrict(cfg: &RunConfig, ctx: &mut Context, literal: &str, degrees_only: bool) -> Result<(), Failure> {
    let lambda = parse_partition(literal)?;
    let p = cfg.p;
    let level = level_of(lambda.size(), p);
    let ds = ctx.degree_sets(std::slice::from_ref(&lambda), p, cfg.method)?.remove(0);
    let vector = match level {
        Some(m) if !degrees_only => Some((m, restrict_to(&lambda, p, m, cfg.method)?)),
        _ => None,
    };
    let mut out = String::new();
    match cfg.format {
        Format::Json => {
            let mut v = json!({
                "partition": lambda.parts(),
                "p": p,
                "level": level,
                "method": cfg.method,
                "degree_set": ds,
            });
            if let Some((m, vec)) = &vector {
                let w = wreath::level(p, *m)?;
                let items: Vec<Value> = vec
                    .nonzero()
                    .map(|(i, mult)| {
                        json!({
                            "index": i,
                            "name": w.irr_name(i),
                            "degree_exponent": vec.exponent(i),
                            "multiplicity": mult.to_string(),
                        })
                    })
                    .collect();
                v["constituents"] = Value::Array(items);
            }
            out = json_line(&v);
        }
        Format::Csv => {
            let Some((m, vec)) = &vector else {
                out.push_str("degree_exponent\n");
                for k in ds.iter() {
                    let _ = writeln!(out, "{k}");
                }
                print!("{out}");
                return Ok(());
            };
            let w = wreath::level(p, *m)?;
            out.push_str("index,name,degree_exponent,multiplicity\n");
            for (i, mult) in vec.nonzero() {
                let _ = writeln!(out, "{i},\"{}\",{},{mult}", w.irr_name(i), vec.exponent(i));
            }
            out.pop();
        }
        _ => {
            let _ = writeln!(out, "χ^{lambda} restricted to a Sylow {p}-subgroup of S_{}", lambda.size());
            let _ = write!(out, "degree set: {ds}");
            if let Some((m, vec)) = &vector {
                let w = wreath::level(p, *m)?;
                let _ = write!(
                    out,
                    "\nconstituents: {} distinct, total degree {}",
                    vec.nonzero().count(),
                    vec.dimension()
                );
                for (i, mult) in vec.nonzero() {
                    let _ = write!(out, "\n  {mult} × [{p}^{}] {}", vec.exponent(i), w.irr_name(i));
                }
            }
        }
    }
    println!("{out}");
    Ok(())
}

pub fn partial(cfg: &RunConfig, literal: &str) -> Result<(), Failure> {
    let lambda = parse_partition(literal)?;
    let m = level_of(lambda.size(), cfg.p).ok_or_else(|| {
        Failure::Usage(format!("|λ| = {} is not a power of {}", lambda.size(), cfg.p))
    })?;
    let d = partial_max(&lambda, cfg.p, m)?;
    match cfg.format {
        Format::Json => println!(
            "{}",
            json_line(&json!({"partition": lambda.parts(), "p": cfg.p, "level": m, "max_exponent": d}))
        ),
        _ => println!("{d}"),
    }
    Ok(())
}

pub fn omega(
    cfg: &RunConfig,
    ctx: &mut Context,
    n: usize,
    k: u64,
    oracle: Option<Method>,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let p = cfg.p;
    let Some(method) = oracle else {
        let a = omega_predicted(n as u64, k, p)?;
        let count = a.boxed.map(|b| b.members().len()).unwrap_or(0);
        match cfg.format {
            Format::Json => println!("{}", json_line(&json!({"prediction": a, "count": count}))),
            _ => println!("{a} ({count} partitions)"),
        }
        return Ok(());
    };
    let set = ctx.omega(n, p, k, method)?;
    let boxed = as_box(n, &set);
    let prediction = if p == 2 {
        None
    } else {
        Some(omega_predicted(n as u64, k, p)?)
    };
    let expected: Option<Vec<Partition>> =
        prediction.map(|a| a.boxed.map(|b| b.members()).unwrap_or_default());
    let have: BTreeSet<&Partition> = set.iter().collect();
    let (extra, missing) = match &expected {
        Some(e) => {
            let want: BTreeSet<&Partition> = e.iter().collect();
            let mut extra: Vec<Partition> = have.difference(&want).map(|l| (*l).clone()).collect();
            let mut missing: Vec<Partition> = want.difference(&have).map(|l| (*l).clone()).collect();
            extra.sort_by(|a, b| b.cmp(a));
            missing.sort_by(|a, b| b.cmp(a));
            (extra, missing)
        }
        None => (Vec::new(), Vec::new()),
    };
    let agrees = expected.as_ref().map(|_| extra.is_empty() && missing.is_empty());
    match cfg.format {
        Format::Json => {
            let v = json!({
                "n": n,
                "p": p,
                "k": k,
                "method": method,
                "partitions": parts(&set),
                "box": boxed,
                "prediction": prediction,
                "agrees": agrees,
                "extra": parts(&extra),
                "missing": parts(&missing),
            });
            println!("{}", json_line(&v));
        }
        _ => {
            let total = enumerate_partitions(n).len();
            match (boxed, set.is_empty()) {
                (_, true) => println!("∅"),
                (Some(b), _) => println!("{b} ({} of {total} partitions)", set.len()),
                (None, _) => println!("{} — NOT a box set", set_literal(&set)),
            }
            match (&prediction, agrees) {
                (Some(a), Some(true)) => println!("prediction {a}: agrees"),
                (Some(a), _) => {
                    println!("prediction {a}: differs");
                    println!("  oracle only: {}", set_literal(&extra));
                    println!("  prediction only: {}", set_literal(&missing));
                }
                (None, _) => println!("prediction: none (the box-set theorems need an odd prime)"),
            }
        }
    }
    if agrees == Some(false) {
        return Err(Failure::Verification(format!(
            "oracle and prediction disagree for Ω_{n}^{k} at p = {p}"
        )));
    }
    Ok(())
}

pub fn ratio(cfg: &RunConfig, n: u64, digits: usize) -> Result<(), Failure> {
    let r = omega_ratio(n, cfg.p)?;
    match cfg.format {
        Format::Json => {
            let v = json!({
                "n": n,
                "p": cfg.p,
                "numerator": r.ratio.numer().to_string(),
                "denominator": r.ratio.denom().to_string(),
                "decimal": r.decimal(digits),
            });
            println!("{}", json_line(&v));
        }
        Format::Csv => println!("n,p,numerator,denominator\n{n},{},{},{}", cfg.p, r.ratio.numer(), r.ratio.denom()),
        _ => println!("{r} ≈ {}", r.decimal(digits)),
    }
    Ok(())
}

pub fn irr(cfg: &RunConfig, p: u64, m: u32, classes: bool) -> Result<(), Failure> {
    if let Some(max) = cfg.max_level {
        wreath::set_scope(wreath::current_scope().with_max_level(p, max));
    }
    let w = wreath::level(p, m)?;
    if cfg.format == Format::Json {
        let mut v = w.to_json();
        if !classes {
            if let Some(obj) = v.as_object_mut() {
                obj.remove("classes");
            }
        }
        println!("{}", json_line(&v));
        return Ok(());
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "P_{{{p}^{m}}}: order {}, degree {}, {} irreducible characters",
        w.order(),
        w.degree_of_action(),
        w.irr_len()
    );
    let counts: Vec<String> = w
        .exponent_counts()
        .iter()
        .map(|(k, c)| format!("{p}^{k}: {c}"))
        .collect();
    let _ = writeln!(out, "degrees: {}", counts.join(", "));
    for i in 0..w.irr_len() {
        let _ = writeln!(out, "{i:>6}  {p}^{:<3} {}", w.exponent(i), w.irr_name(i));
    }
    if classes {
        let _ = writeln!(out, "classes:");
        for c in 0..w.irr_len() {
            let _ = writeln!(
                out,
                "{c:>6}  size {:<12} type {:<20} {}",
                w.class_size(c),
                w.class_cycle_type(c).to_string(),
                w.class_name(c)
            );
        }
    }
    print!("{out}");
    Ok(())
}

pub fn star(cfg: &RunConfig, left: &str, right: &str) -> Result<(), Failure> {
    let (a, b) = (parse_box(left)?, parse_box(right)?);
    let sa: BTreeSet<Partition> = a.members().into_iter().collect();
    let sb: BTreeSet<Partition> = b.members().into_iter().collect();
    let n = a.n + b.n;
    let prod = if sa.is_empty() || sb.is_empty() {
        BTreeSet::new()
    } else {
        star_product(&sa, &sb)?
    };
    let mut list: Vec<Partition> = prod.into_iter().collect();
    list.sort_by(|x, y| y.cmp(x));
    let boxed = as_box(n, &list);
    match cfg.format {
        Format::Json => {
            let v = json!({"left": a, "right": b, "box": boxed, "partitions": parts(&list)});
            println!("{}", json_line(&v));
        }
        _ => {
            let rhs = match boxed {
                Some(bx) => format!("{bx} ({} partitions)", list.len()),
                None if list.is_empty() => "∅".into(),
                None => format!("{} — NOT a box set", set_literal(&list)),
            };
            println!("{a} ⋆ {b} = {rhs}");
        }
    }
    Ok(())
}
