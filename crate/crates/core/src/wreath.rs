//! Irreducible characters and conjugacy classes of the iterated wreath
//! product `P_{p^m} = P_{p^{m-1}} ≀ C_p`, built level by level.
//!
//! Labels and classes at level `m` refer to level `m-1` by index; the index
//! order at every level is the canonical total order (extension labels first,
//! then induced labels, each compared componentwise).
//!
//! Character values lie in `Z[ζ_p]`: level 1 values are powers of `ζ_p` and the
//! wreath constructions only multiply, add and twist by `ζ_p`. They are stored
//! as nonnegative coefficient vectors of length `p` in `Z[x]/(x^p - 1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, LazyLock, Mutex, RwLock};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::Cyclotomic;
use crate::error::{require_prime, Error, Result};
use crate::partitions::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IrrNode {
    Trivial,
    /// `X(θ; ψ_twist)` with `θ` the level `m-1` label `inner`.
    Extension { inner: usize, twist: u32 },
    /// Induced from `θ_1 × ⋯ × θ_p`, tuple minimal among its rotations.
    Induced { tuple: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassNode {
    Identity,
    /// Base group elements with components in the given classes, up to rotation.
    Base { tuple: Vec<usize> },
    /// Elements `(g; c^top)` whose cycle product lies in `product_class`.
    Twisted { product_class: usize, top: u32 },
}

/// Handle to an irreducible character of `P_{p^level}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrLabel {
    pub p: u64,
    pub level: u32,
    pub index: usize,
    pub degree_exponent: u64,
}

/// Handle to a conjugacy class of `P_{p^level}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    pub p: u64,
    pub level: u32,
    pub index: usize,
    pub cycle_type: Partition,
    #[serde(serialize_with = "as_string")]
    pub size: BigUint,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Largest level built by default for a prime.
pub fn default_max_level(p: u64) -> u32 {
    match p {
        2 => 4,
        3 => 3,
        5 => 2,
        _ => 1,
    }
}

/// Table size limits.
#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct Scope {
    overrides: BTreeMap<u64, u32>,
}


impl Scope {
    pub fn with_max_level(mut self, p: u64, level: u32) -> Self {
        self.overrides.insert(p, level);
        self
    }

    pub fn max_level(&self, p: u64) -> u32 {
        self.overrides
            .get(&p)
            .copied()
            .unwrap_or_else(|| default_max_level(p))
    }

    pub fn check(&self, p: u64, level: u32) -> Result<()> {
        require_prime(p)?;
        let max = self.max_level(p);
        if level <= max {
            return Ok(());
        }
        let k = irr_count(p, level);
        let bytes = k.saturating_mul(k).saturating_mul(p as u128 * 8);
        Err(Error::ScopeExceeded(format!(
            "P_{{{p}^{level}}} has {k} irreducible characters; its table needs about {} MiB \
             (configured bound for p = {p} is level {max})",
            bytes >> 20
        )))
    }
}

/// `k(m) = p k(m-1) + (k(m-1)^p - k(m-1))/p`, saturating.
pub fn irr_count(p: u64, level: u32) -> u128 {
    let mut k: u128 = 1;
    let p128 = p as u128;
    for _ in 0..level {
        let pow = (0..p).try_fold(1u128, |acc, _| acc.checked_mul(k));
        k = match pow {
            Some(kp) => p128 * k + (kp - k) / p128,
            None => u128::MAX,
        };
    }
    k
}

/// All irreducible characters and classes of one level.
#[derive(Debug)]
pub struct WreathLevel {
    p: u64,
    level: u32,
    order: u128,
    irr: Vec<IrrNode>,
    exponents: Vec<u64>,
    classes: Vec<ClassNode>,
    class_sizes: Vec<u128>,
    class_type: Vec<usize>,
    cycle_types: Vec<Partition>,
    /// `values[(φ·C + c)·p + i]` is the coefficient of `ζ^i` in `φ(c)`.
    values: Vec<u64>,
    /// `type_sums[φ·T + t] = Σ_{c of type t} |c| φ(c)`, a rational integer.
    type_sums: Vec<i128>,
    parent: Option<Arc<WreathLevel>>,
}

static LEVELS: LazyLock<Mutex<HashMap<(u64, u32), Arc<WreathLevel>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

static SCOPE: LazyLock<RwLock<Scope>> = LazyLock::new(|| RwLock::new(Scope::default()));

/// Replaces the process-wide scope used by [`level`] and the oracles.
pub fn set_scope(scope: Scope) {
    *SCOPE.write().unwrap() = scope;
}

pub fn current_scope() -> Scope {
    SCOPE.read().unwrap().clone()
}

/// The level `m` tables for `p`, within the process-wide scope.
pub fn level(p: u64, m: u32) -> Result<Arc<WreathLevel>> {
    level_with_scope(p, m, &current_scope())
}

pub fn level_with_scope(p: u64, m: u32, scope: &Scope) -> Result<Arc<WreathLevel>> {
    scope.check(p, m)?;
    let mut cache = LEVELS.lock().unwrap();
    if let Some(l) = cache.get(&(p, m)) {
        return Ok(l.clone());
    }
    let mut start = (0..m).rev().find(|&j| cache.contains_key(&(p, j)));
    let mut current = match start {
        Some(j) => cache[&(p, j)].clone(),
        None => {
            let base = Arc::new(WreathLevel::trivial(p));
            cache.insert((p, 0), base.clone());
            start = Some(0);
            base
        }
    };
    for _ in start.unwrap()..m {
        let next = Arc::new(WreathLevel::next(&current)?);
        cache.insert((p, next.level), next.clone());
        current = next;
    }
    Ok(current)
}

/// Rotation-minimal `p`-tuples over `[0, k)`, lexicographically ordered.
fn canonical_tuples(k: usize, p: usize, include_constant: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0usize; p];
    loop {
        let constant = t.iter().all(|&x| x == t[0]);
        if (include_constant || !constant) && is_min_rotation(&t) {
            out.push(t.clone());
        }
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < k {
                break;
            }
            t[i] = 0;
        }
    }
}

fn is_min_rotation(t: &[usize]) -> bool {
    let p = t.len();
    (1..p).all(|r| {
        let rotated = t[r..].iter().chain(&t[..r]);
        t.iter().le(rotated)
    })
}

/// Product in `Z[x]/(x^p - 1)`.
fn mul_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    let p = a.len();
    out.iter_mut().for_each(|x| *x = 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[(i + j) % p] += x * y;
        }
    }
}

impl WreathLevel {
    fn trivial(p: u64) -> Self {
        let mut values = vec![0; p as usize];
        values[0] = 1;
        WreathLevel {
            p,
            level: 0,
            order: 1,
            irr: vec![IrrNode::Trivial],
            exponents: vec![0],
            classes: vec![ClassNode::Identity],
            class_sizes: vec![1],
            class_type: vec![0],
            cycle_types: vec![Partition::row(1)],
            values,
            type_sums: vec![1],
            parent: None,
        }
    }

    fn next(prev: &Arc<WreathLevel>) -> Result<Self> {
        let p = prev.p;
        let pu = p as usize;
        let kp = prev.irr.len();
        let cp = prev.classes.len();
        let overflow = || Error::ScopeExceeded(format!("|P_{{{p}^{}}}| overflows", prev.level + 1));
        let g = prev.order;
        let order = (0..p)
            .try_fold(1u128, |acc, _| acc.checked_mul(g))
            .and_then(|x| x.checked_mul(p as u128))
            .ok_or_else(overflow)?;

        let mut irr = Vec::new();
        let mut exponents = Vec::new();
        for inner in 0..kp {
            for twist in 0..p as u32 {
                irr.push(IrrNode::Extension { inner, twist });
                exponents.push(p * prev.exponents[inner]);
            }
        }
        for tuple in canonical_tuples(kp, pu, false) {
            exponents.push(1 + tuple.iter().map(|&i| prev.exponents[i]).sum::<u64>());
            irr.push(IrrNode::Induced { tuple });
        }

        let mut classes = Vec::new();
        let mut class_sizes = Vec::new();
        let mut raw_types = Vec::new();
        for tuple in canonical_tuples(cp, pu, true) {
            let constant = tuple.iter().all(|&x| x == tuple[0]);
            let mut size = if constant { 1u128 } else { p as u128 };
            let mut parts = Vec::new();
            for &c in &tuple {
                size = size.checked_mul(prev.class_sizes[c]).ok_or_else(overflow)?;
                parts.extend_from_slice(prev.cycle_types[prev.class_type[c]].parts());
            }
            class_sizes.push(size);
            raw_types.push(Partition::from_unsorted(parts));
            classes.push(ClassNode::Base { tuple });
        }
        let g_pow = (0..p - 1)
            .try_fold(1u128, |acc, _| acc.checked_mul(g))
            .ok_or_else(overflow)?;
        for product_class in 0..cp {
            for top in 1..p as u32 {
                classes.push(ClassNode::Twisted { product_class, top });
                class_sizes.push(
                    g_pow
                        .checked_mul(prev.class_sizes[product_class])
                        .ok_or_else(overflow)?,
                );
                let ct = &prev.cycle_types[prev.class_type[product_class]];
                raw_types.push(Partition::from_sorted(
                    ct.parts().iter().map(|&x| x * pu).collect(),
                ));
            }
        }
        if irr.len() != classes.len() {
            return Err(Error::Inconsistency(format!(
                "level {}: {} characters but {} classes",
                prev.level + 1,
                irr.len(),
                classes.len()
            )));
        }
        let total: u128 = class_sizes.iter().sum();
        if total != order {
            return Err(Error::Inconsistency(format!(
                "class equation fails at level {}: Σ|c| = {total}, |P| = {order}",
                prev.level + 1
            )));
        }

        let mut cycle_types = raw_types.clone();
        cycle_types.sort();
        cycle_types.dedup();
        let type_index: HashMap<&Partition, usize> =
            cycle_types.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let class_type: Vec<usize> = raw_types.iter().map(|c| type_index[c]).collect();

        let n = irr.len();
        let mut values = vec![0u64; n * n * pu];
        let mut buf = vec![0u64; pu];
        let mut acc = vec![0u64; pu];
        let mut sum = vec![0u64; pu];
        for (phi, node) in irr.iter().enumerate() {
            for (c, class) in classes.iter().enumerate() {
                let out = &mut values[(phi * n + c) * pu..(phi * n + c + 1) * pu];
                match (node, class) {
                    (IrrNode::Extension { inner, .. }, ClassNode::Base { tuple }) => {
                        acc.copy_from_slice(prev.value(*inner, tuple[0]));
                        for &k in &tuple[1..] {
                            mul_into(&mut buf, &acc, prev.value(*inner, k));
                            acc.copy_from_slice(&buf);
                        }
                        out.copy_from_slice(&acc);
                    }
                    (IrrNode::Extension { inner, twist }, ClassNode::Twisted { product_class, top }) => {
                        let shift = (*twist as usize * *top as usize) % pu;
                        for (i, &v) in prev.value(*inner, *product_class).iter().enumerate() {
                            out[(i + shift) % pu] += v;
                        }
                    }
                    (IrrNode::Induced { tuple: th }, ClassNode::Base { tuple: ks }) => {
                        sum.iter_mut().for_each(|x| *x = 0);
                        for r in 0..pu {
                            acc.copy_from_slice(prev.value(th[r % pu], ks[0]));
                            for i in 1..pu {
                                mul_into(&mut buf, &acc, prev.value(th[(i + r) % pu], ks[i]));
                                acc.copy_from_slice(&buf);
                            }
                            for (s, a) in sum.iter_mut().zip(&acc) {
                                *s += a;
                            }
                        }
                        out.copy_from_slice(&sum);
                    }
                    (IrrNode::Induced { .. }, ClassNode::Twisted { .. }) => {}
                    _ => unreachable!("level-0 nodes above level 0"),
                }
            }
        }

        let mut level = WreathLevel {
            p,
            level: prev.level + 1,
            order,
            irr,
            exponents,
            classes,
            class_sizes,
            class_type,
            cycle_types,
            values,
            type_sums: Vec::new(),
            parent: Some(prev.clone()),
        };
        level.type_sums = level.compute_type_sums()?;
        Ok(level)
    }

    fn compute_type_sums(&self) -> Result<Vec<i128>> {
        let pu = self.p as usize;
        let t = self.cycle_types.len();
        let n = self.irr.len();
        let mut out = vec![0i128; n * t];
        let mut acc = vec![0i128; t * pu];
        for phi in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            for c in 0..n {
                let w = self.class_sizes[c] as i128;
                let ty = self.class_type[c];
                for (i, &v) in self.value(phi, c).iter().enumerate() {
                    acc[ty * pu + i] += w * v as i128;
                }
            }
            for ty in 0..t {
                let coeffs = &acc[ty * pu..(ty + 1) * pu];
                if coeffs[1..].iter().any(|&x| x != coeffs[1]) {
                    return Err(Error::Inconsistency(format!(
                        "class-type sum of {} over {} is not rational",
                        self.irr_name(phi),
                        self.cycle_types[ty]
                    )));
                }
                out[phi * t + ty] = coeffs[0] - if pu > 1 { coeffs[1] } else { 0 };
            }
        }
        Ok(out)
    }

    fn value(&self, phi: usize, c: usize) -> &[u64] {
        let pu = self.p as usize;
        let n = self.irr.len();
        &self.values[(phi * n + c) * pu..(phi * n + c + 1) * pu]
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `|P_{p^m}| = p^{(p^m - 1)/(p - 1)}`.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn degree_of_action(&self) -> usize {
        (self.p as usize).pow(self.level)
    }

    pub fn irr_len(&self) -> usize {
        self.irr.len()
    }

    pub fn irr_node(&self, i: usize) -> &IrrNode {
        &self.irr[i]
    }

    pub fn class_node(&self, c: usize) -> &ClassNode {
        &self.classes[c]
    }

    pub fn exponent(&self, i: usize) -> u64 {
        self.exponents[i]
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn class_size(&self, c: usize) -> u128 {
        self.class_sizes[c]
    }

    pub fn class_cycle_type(&self, c: usize) -> &Partition {
        &self.cycle_types[self.class_type[c]]
    }

    /// Distinct cycle types of elements, sorted.
    pub fn cycle_types(&self) -> &[Partition] {
        &self.cycle_types
    }

    /// `Σ_{c : type(c) = t} |c| φ(c)` for the `t`-th entry of [`Self::cycle_types`].
    pub fn type_sum(&self, phi: usize, t: usize) -> i128 {
        self.type_sums[phi * self.cycle_types.len() + t]
    }

    pub fn irr_label(&self, i: usize) -> IrrLabel {
        IrrLabel {
            p: self.p,
            level: self.level,
            index: i,
            degree_exponent: self.exponents[i],
        }
    }

    pub fn class_label(&self, c: usize) -> ClassLabel {
        ClassLabel {
            p: self.p,
            level: self.level,
            index: c,
            cycle_type: self.class_cycle_type(c).clone(),
            size: BigUint::from(self.class_sizes[c]),
        }
    }

    pub fn irr_labels(&self) -> Vec<IrrLabel> {
        (0..self.irr.len()).map(|i| self.irr_label(i)).collect()
    }

    pub fn class_labels(&self) -> Vec<ClassLabel> {
        (0..self.classes.len()).map(|c| self.class_label(c)).collect()
    }

    /// Number of characters of each degree exponent.
    pub fn exponent_counts(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for &e in &self.exponents {
            *out.entry(e).or_insert(0) += 1;
        }
        out
    }

    /// `φ(c)` in `Z[ζ_p]`.
    pub fn value_at(&self, phi: usize, c: usize) -> Cyclotomic {
        let coeffs: Vec<i64> = self.value(phi, c).iter().map(|&v| v as i64).collect();
        Cyclotomic::from_coeffs(self.p, 1, &coeffs)
            .expect("p was validated at construction")
            .reduce()
    }

    /// Name of a character, built recursively: `1`, `X(θ;j)`, `I(θ_1,…,θ_p)`.
    pub fn irr_name(&self, i: usize) -> String {
        let mut s = String::new();
        self.write_irr_name(i, &mut s);
        s
    }

    fn write_irr_name(&self, i: usize, s: &mut String) {
        match &self.irr[i] {
            IrrNode::Trivial => s.push('1'),
            IrrNode::Extension { inner, twist } => {
                s.push_str("X(");
                self.below().write_irr_name(*inner, s);
                let _ = write!(s, ";{twist})");
            }
            IrrNode::Induced { tuple } => {
                s.push_str("I(");
                for (k, &t) in tuple.iter().enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    self.below().write_irr_name(t, s);
                }
                s.push(')');
            }
        }
    }

    /// Name of a class: `e`, `[κ_1,…,κ_p]`, `T(κ;c)`.
    pub fn class_name(&self, c: usize) -> String {
        let mut s = String::new();
        self.write_class_name(c, &mut s);
        s
    }

    fn write_class_name(&self, c: usize, s: &mut String) {
        match &self.classes[c] {
            ClassNode::Identity => s.push('e'),
            ClassNode::Base { tuple } => {
                s.push('[');
                for (k, &t) in tuple.iter().enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    self.below().write_class_name(t, s);
                }
                s.push(']');
            }
            ClassNode::Twisted { product_class, top } => {
                s.push_str("T(");
                self.below().write_class_name(*product_class, s);
                let _ = write!(s, ";{top})");
            }
        }
    }

    /// The level below, absent at level 0.
    pub fn parent(&self) -> Option<&Arc<WreathLevel>> {
        self.parent.as_ref()
    }

    fn below(&self) -> &WreathLevel {
        self.parent.as_deref().expect("only level 0 has no parent")
    }

    /// Checks the degree equation and first orthogonality for all pairs.
    pub fn verify(&self) -> TableReport {
        let mut failures = Vec::new();
        let pu = self.p as usize;
        let deg_sq: u128 = self
            .exponents
            .iter()
            .map(|&e| (self.p as u128).pow(2 * e as u32))
            .sum();
        if deg_sq != self.order {
            failures.push(format!("Σ φ(1)² = {deg_sq} but |P| = {}", self.order));
        }
        for phi in 0..self.irr.len() {
            let v = self.value(phi, 0);
            let deg = self.p.pow(self.exponents[phi] as u32);
            if v[0] != deg || v[1..].iter().any(|&x| x != 0) {
                failures.push(format!("{} at identity is not p^{}", self.irr_name(phi), self.exponents[phi]));
            }
        }
        match self.gram() {
            Ok(gram) => {
                let n = self.irr.len();
                for a in 0..n {
                    for b in 0..n {
                        let want = if a == b { self.order as i128 } else { 0 };
                        let got = &gram[(a * n + b) * pu..(a * n + b + 1) * pu];
                        let rational = got[1..].iter().all(|&x| x == got.get(1).copied().unwrap_or(0));
                        let value = got[0] - got.get(1).copied().unwrap_or(0);
                        if (!rational || value != want)
                            && failures.len() < 20 {
                                failures.push(format!(
                                    "Σ|c| {}(c)·conj {}(c) = {:?} (coefficients), expected {want}",
                                    self.irr_name(a),
                                    self.irr_name(b),
                                    got
                                ));
                            }
                    }
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        TableReport {
            p: self.p,
            level: self.level,
            characters: self.irr.len(),
            classes: self.classes.len(),
            order: self.order.to_string(),
            failures,
        }
    }

    /// `G[a][b] = Σ_c |c| a(c) conj(b(c))` as coefficient vectors over `ζ^0..ζ^{p-1}`. Uses an `f64` matrix product, which is exact because
    /// every partial sum is an integer below `2^53`; this is checked first.
    fn gram(&self) -> Result<Vec<i128>> {
        let pu = self.p as usize;
        let n = self.irr.len();
        let max_coeff = self.values.iter().copied().max().unwrap_or(0) as f64;
        let weight: f64 = self.class_sizes.iter().map(|&w| w as f64).sum();
        if weight * max_coeff * max_coeff >= (1u64 << 53) as f64 {
            return Err(Error::ScopeExceeded(format!(
                "Gram matrix at level {} exceeds exact f64 range",
                self.level
            )));
        }
        // reduced coordinates d_i = a_i - a_{p-1} over 1, ζ, …, ζ^{p-2}
        let dims = (pu - 1).max(1);
        let mut coords = vec![vec![0f64; n * n]; dims];
        let mut weighted = vec![vec![0f64; n * n]; dims];
        for phi in 0..n {
            for c in 0..n {
                let w = self.class_sizes[c] as f64;
                let v = self.value(phi, c);
                let last = if pu > 1 { v[pu - 1] as f64 } else { 0.0 };
                for i in 0..dims {
                    let d = v[i] as f64 - last;
                    coords[i][phi * n + c] = d;
                    weighted[i][phi * n + c] = d * w;
                }
            }
        }
        let mut out = vec![0i128; n * n * pu];
        let mut prod = vec![0f64; n * n];
        for i in 0..dims {
            for j in i..dims {
                // M_ij = A_i · (W A_j)^T, and M_ji = M_ij^T
                unsafe {
                    matrixmultiply::dgemm(
                        n,
                        n,
                        n,
                        1.0,
                        coords[i].as_ptr(),
                        n as isize,
                        1,
                        weighted[j].as_ptr(),
                        1,
                        n as isize,
                        0.0,
                        prod.as_mut_ptr(),
                        n as isize,
                        1,
                    );
                }
                let shift = (i + pu - j) % pu;
                let back = (j + pu - i) % pu;
                for a in 0..n {
                    for b in 0..n {
                        let v = prod[a * n + b] as i128;
                        out[(a * n + b) * pu + shift] += v;
                        if i != j {
                            out[(b * n + a) * pu + back] += v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// JSON export: labels, exponents, classes, cycle types, sizes and values
    /// as reduced coefficient vectors over `1, ζ_p, …, ζ_p^{p-2}`.
    pub fn to_json(&self) -> Value {
        let n = self.irr.len();
        let labels: Vec<Value> = (0..n)
            .map(|i| json!({"name": self.irr_name(i), "degree_exponent": self.exponents[i]}))
            .collect();
        let classes: Vec<Value> = (0..n)
            .map(|c| {
                json!({
                    "name": self.class_name(c),
                    "cycle_type": self.class_cycle_type(c),
                    "size": self.class_sizes[c].to_string(),
                })
            })
            .collect();
        let values: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|phi| {
                (0..n)
                    .map(|c| {
                        let v = self.value_at(phi, c);
                        v.coeffs()[..(self.p as usize - 1).max(1)].to_vec()
                    })
                    .collect()
            })
            .collect();
        json!({
            "p": self.p,
            "level": self.level,
            "order": self.order.to_string(),
            "characters": labels,
            "classes": classes,
            "values": values,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub p: u64,
    pub level: u32,
    pub characters: usize,
    pub classes: usize,
    pub order: String,
    pub failures: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn enumerate_irr(p: u64, m: u32) -> Result<Vec<IrrLabel>> {
    Ok(level(p, m)?.irr_labels())
}

pub fn irr_of_degree(p: u64, m: u32, k: u64) -> Result<Vec<IrrLabel>> {
    Ok(level(p, m)?
        .irr_labels()
        .into_iter()
        .filter(|l| l.degree_exponent == k)
        .collect())
}

pub fn enumerate_classes(p: u64, m: u32) -> Result<Vec<ClassLabel>> {
    Ok(level(p, m)?.class_labels())
}

pub fn char_value(phi: &IrrLabel, c: &ClassLabel) -> Result<Cyclotomic> {
    if phi.p != c.p || phi.level != c.level {
        return Err(Error::LevelMismatch(format!(
            "character of P_{{{}^{}}} evaluated at class of P_{{{}^{}}}",
            phi.p, phi.level, c.p, c.level
        )));
    }
    let l = level(phi.p, phi.level)?;
    if phi.index >= l.irr_len() || c.index >= l.irr_len() {
        return Err(Error::OutOfRange {
            what: "label index",
            detail: format!("{} / {} of {}", phi.index, c.index, l.irr_len()),
        });
    }
    Ok(l.value_at(phi.index, c.index))
}

pub fn verify_table(p: u64, m: u32) -> Result<TableReport> {
    Ok(level(p, m)?.verify())
}
