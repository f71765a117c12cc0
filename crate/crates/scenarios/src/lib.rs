//! Executable reproductions of the finite-group cohomology claims. Each
//! scenario runs a fixed list of checks and emits a structured report that
//! serializes to the versioned `cohoforge-report/1` JSON document.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use cohoforge_core::catalog;
use cohoforge_core::group::{direct_product, FiniteGroup, GroupHom};
use cohoforge_core::ops::{
    self, dec_ladder, inflation, is_fully_decomposable, kunneth_dims, restriction,
};
use cohoforge_core::resolution::{Resolution, Strategy};
use cohoforge_core::ring::{presentation, Parity, RingPresentation};

pub const SCHEMA: &str = "cohoforge-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub desc: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Check {
    pub fn compare(desc: impl Into<String>, expected: impl Serialize, computed: impl Serialize) -> Check {
        let expected = serde_json::to_value(expected).expect("serializable");
        let computed = serde_json::to_value(computed).expect("serializable");
        let pass = expected == computed;
        Check { desc: desc.into(), expected, computed, pass }
    }

    pub fn holds(desc: impl Into<String>, computed: bool) -> Check {
        Check::compare(desc, true, computed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub schema: String,
    pub scenario: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub wall_ms: u64,
}

impl ScenarioReport {
    fn new(scenario: &str, params: Value, checks: Vec<Check>, started: Instant) -> Self {
        ScenarioReport {
            schema: SCHEMA.to_string(),
            scenario: scenario.to_string(),
            params,
            checks,
            wall_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario {} {} ({} ms)\n",
            self.scenario,
            if self.pass() { "PASS" } else { "FAIL" },
            self.wall_ms
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} (expected {}, computed {})\n",
                if c.pass { "ok" } else { "FAIL" },
                c.desc,
                c.expected,
                c.computed
            ));
        }
        out
    }
}

#[derive(Debug)]
pub enum ScenarioError {
    Realize(cohoforge_core::parser::RealizeError),
    Resolution(cohoforge_core::resolution::ResolutionError),
    Op(cohoforge_core::ops::OpError),
    Group(cohoforge_core::group::GroupError),
    Ring(cohoforge_core::ring::RingError),
    BadParams(String),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Realize(e) => write!(f, "{}", e),
            ScenarioError::Resolution(e) => write!(f, "{}", e),
            ScenarioError::Op(e) => write!(f, "{}", e),
            ScenarioError::Group(e) => write!(f, "{}", e),
            ScenarioError::Ring(e) => write!(f, "{}", e),
            ScenarioError::BadParams(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for ScenarioError {}

impl From<cohoforge_core::parser::RealizeError> for ScenarioError {
    fn from(e: cohoforge_core::parser::RealizeError) -> Self {
        ScenarioError::Realize(e)
    }
}
impl From<cohoforge_core::resolution::ResolutionError> for ScenarioError {
    fn from(e: cohoforge_core::resolution::ResolutionError) -> Self {
        ScenarioError::Resolution(e)
    }
}
impl From<cohoforge_core::ops::OpError> for ScenarioError {
    fn from(e: cohoforge_core::ops::OpError) -> Self {
        ScenarioError::Op(e)
    }
}
impl From<cohoforge_core::group::GroupError> for ScenarioError {
    fn from(e: cohoforge_core::group::GroupError) -> Self {
        ScenarioError::Group(e)
    }
}
impl From<cohoforge_core::ring::RingError> for ScenarioError {
    fn from(e: cohoforge_core::ring::RingError) -> Self {
        ScenarioError::Ring(e)
    }
}

/// Minimal for p-groups, greedy otherwise.
pub fn auto_strategy(group: &FiniteGroup, p: u32) -> Strategy {
    let mut m = group.order();
    while m.is_multiple_of(p as usize) {
        m /= p as usize;
    }
    if m == 1 {
        Strategy::Minimal
    } else {
        Strategy::Greedy
    }
}

static CACHE_DIR: std::sync::OnceLock<Option<std::path::PathBuf>> = std::sync::OnceLock::new();

/// Route every scenario resolution build through the on-disk cache at `dir`.
/// May be set once per process; None disables caching.
pub fn set_cache_dir(dir: Option<std::path::PathBuf>) {
    let _ = CACHE_DIR.set(dir);
}

fn effective_cache_dir() -> Option<std::path::PathBuf> {
    if let Some(configured) = CACHE_DIR.get() {
        return configured.clone();
    }
    match std::env::var(cohoforge_core::cache::ENV_VAR) {
        Ok(v) if !v.is_empty() => Some(std::path::PathBuf::from(v)),
        _ => None,
    }
}

pub fn build_auto(group: &Arc<FiniteGroup>, p: u32, length: usize) -> Result<Resolution, ScenarioError> {
    let strategy = auto_strategy(group, p);
    match effective_cache_dir() {
        Some(dir) => cohoforge_core::cache::build_cached(&dir, group, p, length, strategy)
            .map_err(|e| match e {
                cohoforge_core::cache::CacheError::Build(b) => ScenarioError::Resolution(b),
                other => ScenarioError::BadParams(other.to_string()),
            }),
        None => Ok(Resolution::build(group, p, length, strategy)?),
    }
}

/// The inflation tower over a cyclic p-group: H^1 survives, the extension
/// class dies one floor up.
pub fn scenario_cyclic_tower(p: u32, n: u32) -> Result<ScenarioReport, ScenarioError> {
    scenario_cyclic_tower_with(p, n, None)
}

/// Test hook: substitute the homomorphism driving the inflation checks.
pub fn scenario_cyclic_tower_with(
    p: u32,
    n: u32,
    hom_override: Option<GroupHom>,
) -> Result<ScenarioReport, ScenarioError> {
    if ![2, 3, 5].contains(&p) || !(2..=4).contains(&n) {
        return Err(ScenarioError::BadParams(format!(
            "cyclic tower needs p in {{2,3,5}} and 2 <= n <= 4, got ({}, {})",
            p, n
        )));
    }
    let started = Instant::now();
    let big = catalog::cyclic((p as usize).pow(n));
    let small = catalog::cyclic((p as usize).pow(n - 1));
    let res_big = build_auto(&big, p, 3)?;
    let res_small = build_auto(&small, p, 5)?;

    let dims_small = res_small.cohomology_dims(4)?;
    let mut checks = vec![Check::compare(
        format!("dims H^*(C{}) are all one through degree 4", small.order()),
        vec![1usize; 5],
        &dims_small,
    )];

    let (phi, res_inf_source) = match hom_override {
        Some(h) => {
            let r = build_auto(h.source(), p, 3)?;
            (h, r)
        }
        None => (
            GroupHom::from_generator_images(&big, &small, &[(1, 1)])
                .map_err(ScenarioError::Group)?,
            res_big,
        ),
    };

    let h1 = res_small.cocycle_basis(1)?;
    let inf_h1 = inflation(&phi, &h1[0], &res_inf_source, &res_small)?;
    checks.push(Check::holds("inflation is injective on H^1", !inf_h1.is_zero()));

    let h2 = res_small.cocycle_basis(2)?;
    let inf_h2 = inflation(&phi, &h2[0], &res_inf_source, &res_small)?;
    checks.push(Check::holds("the H^2 generator inflates to zero", inf_h2.is_zero()));

    Ok(ScenarioReport::new(
        "cyclic-tower",
        json!({"p": p, "n": n}),
        checks,
        started,
    ))
}

/// The presented cohomology ring of the relevant metacyclic family member.
pub fn metacyclic_ring(p: u32, d: u32) -> RingPresentation {
    if p == 2 {
        // F_2[w_1..w_d, c_1..c_d, w_x] / (w_i^2 + w_x w_i)
        let gens: Vec<usize> = std::iter::repeat_n(1, d as usize)
            .chain(std::iter::repeat_n(2, d as usize))
            .chain([1])
            .collect();
        let total = gens.len();
        let relations: Vec<Vec<(i64, Vec<u32>)>> = (0..d as usize)
            .map(|i| {
                let mut sq = vec![0u32; total];
                sq[i] = 2;
                let mut cross = vec![0u32; total];
                cross[i] = 1;
                cross[total - 1] = 1;
                vec![(1, sq), (1, cross)]
            })
            .collect();
        RingPresentation {
            p: 2,
            generator_degrees: gens,
            relations,
            parity: Parity::StrictlyCommutative,
        }
    } else {
        // Λ(w_x, w_1..w_d) ⊗ F_p[c_x, c_1..c_d]
        let gens: Vec<usize> = std::iter::repeat_n(1, d as usize + 1)
            .chain(std::iter::repeat_n(2, d as usize + 1))
            .collect();
        RingPresentation {
            p: p as u8,
            generator_degrees: gens,
            relations: vec![],
            parity: Parity::GradedCommutative,
        }
    }
}

/// Degree-two decomposition under inflation for the split metacyclic
/// families: P(n) -> P(n+1).
pub fn scenario_metacyclic(p: u32, n: u32, d: u32, k: u32) -> Result<ScenarioReport, ScenarioError> {
    if n < 2 || d == 0 {
        return Err(ScenarioError::BadParams("metacyclic scenario needs n >= 2, d >= 1".into()));
    }
    if p != 2 && p != 3 {
        return Err(ScenarioError::BadParams("metacyclic scenario covers p = 2 and p = 3".into()));
    }
    let started = Instant::now();
    let (low, high) = if p == 2 {
        (catalog::a2_family(n, d)?, catalog::a2_family(n + 1, d)?)
    } else {
        (catalog::b_family(p, n, d, k)?, catalog::b_family(p, n + 1, d, k)?)
    };
    let res_low = build_auto(&low, p, 5)?;
    let res_high = build_auto(&high, p, 3)?;

    let dims_low = res_low.cohomology_dims(4)?;
    let ring = metacyclic_ring(p, d);
    let ring_dims = ring.dims(4)?;
    let mut checks = Vec::new();
    if d == 1 {
        checks.push(Check::compare(
            format!("dims H^m({}) = m+1 for m <= 4", low.label()),
            vec![1usize, 2, 3, 4, 5],
            &dims_low,
        ));
    } else {
        checks.push(Check::compare(
            format!("dims H^m({}) match the rank-{} presented ring", low.label(), d),
            &ring_dims,
            &dims_low,
        ));
    }

    if p == 2 && d == 1 {
        let omega = ops::dual_of_named_generator(&res_low, "y")
            .ok_or_else(|| ScenarioError::BadParams("missing dual of y".into()))?;
        let omega_x = ops::dual_of_named_generator(&res_low, "x")
            .ok_or_else(|| ScenarioError::BadParams("missing dual of x".into()))?;
        let lhs = ops::cup(&res_low, &omega, &omega)?;
        let rhs = ops::cup(&res_low, &omega_x, &omega)?;
        checks.push(Check::holds(
            "omega^2 = omega_x*omega canonically",
            lhs.vector == rhs.vector && !lhs.is_zero(),
        ));
    }

    // the natural projection: base generators and x go to their namesakes
    let pairs: Vec<(usize, usize)> = high
        .gen_names()
        .iter()
        .map(|name| {
            (
                high.generator_by_name(name).expect("generator"),
                low.generator_by_name(name).expect("generator"),
            )
        })
        .collect();
    let phi = GroupHom::from_generator_images(&high, &low, &pairs).map_err(ScenarioError::Group)?;

    let ladder_high = dec_ladder(&res_high, 2)?;
    let h2 = res_low.cocycle_basis(2)?;
    let mut all_in_dec = true;
    for class in &h2 {
        let inf = inflation(&phi, class, &res_high, &res_low)?;
        if !is_fully_decomposable(&res_high, &inf, &ladder_high)? {
            all_in_dec = false;
        }
    }
    checks.push(Check::holds(
        format!(
            "every H^2({}) basis class inflates into Dec^2({})",
            low.label(),
            high.label()
        ),
        all_in_dec,
    ));

    checks.push(Check::compare(
        format!("dims H^m({}) match the presented ring", low.label()),
        &ring_dims,
        &dims_low,
    ));

    Ok(ScenarioReport::new(
        "metacyclic",
        json!({"p": p, "n": n, "d": d, "k": if p == 2 { Value::Null } else { json!(k) }}),
        checks,
        started,
    ))
}

/// Groups and maps of the order-32/order-64 quaternion computations,
/// assembled once and shared between scenarios.
pub struct QuaternionLab {
    pub q8: Arc<FiniteGroup>,
    pub res_q8: Resolution,
    pub h4_basis: Vec<cohoforge_core::resolution::CohClass>,
}

impl QuaternionLab {
    pub fn new() -> Result<Self, ScenarioError> {
        let q8 = catalog::quaternion8();
        let res_q8 = build_auto(&q8, 2, 9)?;
        let h4_basis = res_q8.cocycle_basis(4)?;
        Ok(QuaternionLab { q8, res_q8, h4_basis })
    }

    pub fn hom_from_h32(&self) -> Result<(Arc<FiniteGroup>, GroupHom), ScenarioError> {
        let h = catalog::h32();
        let phi = GroupHom::from_generator_images(
            &h,
            &self.q8,
            &[
                (h.generator_by_name("g").unwrap(), self.q8.generator_by_name("g").unwrap()),
                (h.generator_by_name("h").unwrap(), self.q8.generator_by_name("h").unwrap()),
            ],
        )
        .map_err(ScenarioError::Group)?;
        Ok((h, phi))
    }

    /// H x Z/2 -> Q8: the H factor by name, the involution to the centre.
    /// `central` = false sends the involution to the identity instead — the
    /// negative control that collapses the survival mechanism.
    pub fn hom_from_h32_times_c2(
        &self,
        central: bool,
    ) -> Result<(Arc<FiniteGroup>, GroupHom), ScenarioError> {
        let h = catalog::h32();
        let c2 = catalog::cyclic(2);
        let (prod, _, _) = direct_product(&h, &c2).map_err(ScenarioError::Group)?;
        let g_q8 = self.q8.generator_by_name("g").unwrap();
        let h_q8 = self.q8.generator_by_name("h").unwrap();
        let center = self.q8.mul(g_q8, g_q8); // g^2 generates the centre
        let c_image = if central { center } else { 0 };
        let phi = GroupHom::from_generator_images(
            &prod,
            &self.q8,
            &[
                (prod.generator_by_name("g").unwrap(), g_q8),
                (prod.generator_by_name("h").unwrap(), h_q8),
                (prod.generator_by_name("g'").unwrap(), c_image),
            ],
        )
        .map_err(ScenarioError::Group)?;
        Ok((prod, phi))
    }

    pub fn hom_from_c8_semidirect_c8(&self) -> Result<(Arc<FiniteGroup>, GroupHom), ScenarioError> {
        let big = catalog::c8_semidirect_c8();
        let phi = GroupHom::from_generator_images(
            &big,
            &self.q8,
            &[
                (big.generator_by_name("g").unwrap(), self.q8.generator_by_name("g").unwrap()),
                (big.generator_by_name("h").unwrap(), self.q8.generator_by_name("h").unwrap()),
            ],
        )
        .map_err(ScenarioError::Group)?;
        Ok((big, phi))
    }
}

/// The order-32/order-64 computations around H^4(Q8): periodicity, the
/// decomposable ladder, and the three inflation targets.
pub fn scenario_quaternion() -> Result<ScenarioReport, ScenarioError> {
    scenario_quaternion_with(None)
}

/// Test hook: substitute the homomorphism used in the survival check (iv).
pub fn scenario_quaternion_with(
    survival_hom_override: Option<(Arc<FiniteGroup>, GroupHom)>,
) -> Result<ScenarioReport, ScenarioError> {
    let started = Instant::now();
    let lab = QuaternionLab::new()?;
    let mut checks = Vec::new();

    let dims = lab.res_q8.cohomology_dims(8)?;
    checks.push(Check::compare(
        "dims H^*(Q8) repeat with period four",
        vec![1usize, 2, 2, 1, 1, 2, 2, 1, 1],
        &dims,
    ));

    let ladder = dec_ladder(&lab.res_q8, 4)?;
    checks.push(Check::compare(
        "dec dims of Q8 through degree 4",
        vec![1usize, 2, 2, 1, 0],
        ladder.dims(),
    ));

    // (iii) inflation along H(32) ↠ Q8 annihilates H^4
    let (h32, phi_h) = lab.hom_from_h32()?;
    let res_h32 = build_auto(&h32, 2, 5)?;
    let mut all_die = true;
    for class in &lab.h4_basis {
        let inf = inflation(&phi_h, class, &res_h32, &lab.res_q8)?;
        if !inf.is_zero() {
            all_die = false;
        }
    }
    checks.push(Check::holds("inflation along H(32) ↠ Q8 kills every H^4 class", all_die));

    // (iv) inflation along H x Z/2 ↠ Q8 is nonzero and decomposable
    let (prod, phi_prod) = match survival_hom_override {
        Some(pair) => pair,
        None => lab.hom_from_h32_times_c2(true)?,
    };
    let res_prod = build_auto(&prod, 2, 5)?;
    let ladder_prod = dec_ladder(&res_prod, 4)?;
    let inf = inflation(&phi_prod, &lab.h4_basis[0], &res_prod, &lab.res_q8)?;
    checks.push(Check::compare(
        "inflation along HxZ/2 ↠ Q8 of the H^4 generator is nonzero and lies in Dec^4",
        json!({"nonzero": true, "decomposable": true}),
        json!({
            "nonzero": !inf.is_zero(),
            "decomposable": is_fully_decomposable(&res_prod, &inf, &ladder_prod)?,
        }),
    ));

    // (v) inflation along Z/8 ⋊ Z/8 ↠ Q8 is zero
    let (big, phi_big) = lab.hom_from_c8_semidirect_c8()?;
    let res_big = build_auto(&big, 2, 5)?;
    let inf_big = inflation(&phi_big, &lab.h4_basis[0], &res_big, &lab.res_q8)?;
    checks.push(Check::holds(
        "inflation along Z/8⋊Z/8 ↠ Q8 of the H^4 generator is zero",
        inf_big.is_zero(),
    ));

    // (vi) restriction to the centre is nonzero
    let g = lab.q8.generator_by_name("g").unwrap();
    let center = lab.q8.subgroup(&[lab.q8.mul(g, g)]);
    let (center_group, incl) = center.as_group("Z(Q8)").map_err(ScenarioError::Group)?;
    let res_center = build_auto(&center_group, 2, 5)?;
    let res_v = restriction(&incl, &lab.h4_basis[0], &res_center, &lab.res_q8)?;
    checks.push(Check::holds(
        "restriction of the H^4 generator to the centre of Q8 is nonzero",
        !res_v.is_zero(),
    ));

    // (vii) dims of Z/4 ⋊ Z/4 match the presented ring
    let h2_group = catalog::c4_semidirect_c4();
    let res_h2 = build_auto(&h2_group, 2, 5)?;
    let ring = presentation(
        2,
        &[1, 1, 2, 2],
        &[&[(1, &[2, 0, 0, 0])], &[(1, &[0, 2, 0, 0]), (1, &[1, 1, 0, 0])]],
        Parity::StrictlyCommutative,
    );
    checks.push(Check::compare(
        "dims H^*(Z/4⋊Z/4) match F2[z,y,x,w]/(z^2, y(y+z))",
        ring.dims(4)?,
        res_h2.cohomology_dims(4)?,
    ));

    Ok(ScenarioReport::new("quaternion", json!({}), checks, started))
}

/// The splitting-without-vanishing mechanism at its quaternion core, plus
/// the Künneth bookkeeping for the product factors. The order-2048 group of
/// the worked example is deliberately not constructed.
pub fn scenario_splitting_without_vanishing() -> Result<ScenarioReport, ScenarioError> {
    let started = Instant::now();
    let lab = QuaternionLab::new()?;
    let mut checks = Vec::new();

    let (h32, phi_h) = lab.hom_from_h32()?;
    let res_h32 = build_auto(&h32, 2, 5)?;
    let inf_dead = inflation(&phi_h, &lab.h4_basis[0], &res_h32, &lab.res_q8)?;
    checks.push(Check::holds(
        "the H^4 generator dies under inflation to H(32)",
        inf_dead.is_zero(),
    ));

    let (prod, phi_prod) = lab.hom_from_h32_times_c2(true)?;
    let res_prod = build_auto(&prod, 2, 5)?;
    let ladder_prod = dec_ladder(&res_prod, 4)?;
    let inf_alive = inflation(&phi_prod, &lab.h4_basis[0], &res_prod, &lab.res_q8)?;
    checks.push(Check::holds(
        "the H^4 generator survives to HxZ/2 and fully decomposes there",
        !inf_alive.is_zero() && is_fully_decomposable(&res_prod, &inf_alive, &ladder_prod)?,
    ));

    // Künneth bookkeeping
    let q8_dims = lab.res_q8.cohomology_dims(4)?;
    let c2 = catalog::cyclic(2);
    let res_c2 = build_auto(&c2, 2, 5)?;
    let c2_dims = res_c2.cohomology_dims(4)?;
    let (q8c2, _, _) = direct_product(&lab.q8, &c2).map_err(ScenarioError::Group)?;
    let res_q8c2 = build_auto(&q8c2, 2, 5)?;
    let direct = res_q8c2.cohomology_dims(4)?;
    checks.push(Check::compare(
        "dims H^*(Q8xC2) equal the convolution of the factor dims",
        kunneth_dims(&q8_dims, &c2_dims, 4),
        &direct,
    ));
    checks.push(Check::compare(
        "dims H^*(Q8xC2) through degree 4",
        vec![1usize, 3, 5, 6, 7],
        &direct,
    ));

    let c1 = catalog::cyclic(1);
    let (q8c1, _, _) = direct_product(&lab.q8, &c1).map_err(ScenarioError::Group)?;
    let res_q8c1 = build_auto(&q8c1, 2, 5)?;
    checks.push(Check::compare(
        "degenerate factor: dims H^*(Q8xC1) equal dims H^*(Q8)",
        &q8_dims,
        res_q8c1.cohomology_dims(4)?,
    ));

    Ok(ScenarioReport::new(
        "splitting",
        json!({"order_2048_group_constructed": false}),
        checks,
        started,
    ))
}

/// Per-group census over the shipped catalog: the classifier verdict against
/// the Dec ladder through degree `max_degree`.
pub fn scenario_census(p: u32, max_degree: usize) -> Result<ScenarioReport, ScenarioError> {
    scenario_census_with(p, max_degree, None)
}

/// Census with an optional thread budget; groups are processed in a fixed
/// order and reports are deterministic regardless of the thread count.
pub fn scenario_census_with(
    p: u32,
    max_degree: usize,
    threads: Option<usize>,
) -> Result<ScenarioReport, ScenarioError> {
    if !(p == 2 || p == 3) {
        return Err(ScenarioError::BadParams("census runs at p = 2 and p = 3".into()));
    }
    if max_degree == 0 || max_degree > 5 {
        return Err(ScenarioError::BadParams("census covers degrees 1 through 5".into()));
    }
    let started = Instant::now();
    let groups = catalog::census_catalog();
    let eligible: Vec<Arc<FiniteGroup>> =
        groups.into_iter().filter(|g| g.order() % p as usize == 0).collect();

    let worker = |g: &Arc<FiniteGroup>| -> Result<Check, ScenarioError> {
        let verdict = g.degree_one_classifier(p).map_err(ScenarioError::Group)?;
        let res = build_auto(g, p, max_degree + 1)?;
        if !res.verify_exactness().pass {
            return Err(ScenarioError::BadParams(format!(
                "resolution of {} failed verification",
                g.label()
            )));
        }
        let dims = res.cohomology_dims(max_degree)?;
        let ladder = dec_ladder(&res, max_degree)?;
        let dec = ladder.dims();
        let witness = (1..=max_degree).find(|&n| dec[n] != dims[n]);
        let claim = if verdict.generated_in_degree_one {
            witness.is_none()
        } else {
            witness.is_some()
        };
        let desc = match (verdict.generated_in_degree_one, witness) {
            (true, _) => format!(
                "{} (order {}): classifier true => Dec^n = H^n for n <= {}",
                g.label(),
                g.order(),
                max_degree
            ),
            (false, Some(w)) => format!(
                "{} (order {}): classifier false => witness degree {} (dec {} < dim {})",
                g.label(),
                g.order(),
                w,
                dec[w],
                dims[w]
            ),
            (false, None) => format!(
                "{} (order {}): classifier false but no witness found through degree {}",
                g.label(),
                g.order(),
                max_degree
            ),
        };
        Ok(Check::holds(desc, claim))
    };

    let threads = threads.unwrap_or(1).max(1);
    let checks: Vec<Check> = if threads <= 1 {
        eligible.iter().map(worker).collect::<Result<_, _>>()?
    } else {
        let mut slots: Vec<Option<Result<Check, ScenarioError>>> =
            (0..eligible.len()).map(|_| None).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slot_lock = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..threads.min(eligible.len().max(1)) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= eligible.len() {
                        break;
                    }
                    let result = worker(&eligible[i]);
                    let mut guard = slot_lock.lock().unwrap();
                    guard[i] = Some(result);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.expect("every slot filled"))
            .collect::<Result<_, _>>()?
    };

    Ok(ScenarioReport::new(
        "census",
        json!({"p": p, "max_degree": max_degree, "groups": eligible.len()}),
        checks,
        started,
    ))
}

/// Run a scenario family by id, as exposed by the repro command.
pub fn run_scenario(
    id: &str,
    extended: bool,
    threads: Option<usize>,
) -> Result<Vec<ScenarioReport>, ScenarioError> {
    match id {
        "cyclic-tower" => {
            let mut out = Vec::new();
            for (p, n) in [(2, 2), (2, 3), (3, 2)] {
                out.push(scenario_cyclic_tower(p, n)?);
            }
            Ok(out)
        }
        "metacyclic" => {
            let mut out = vec![scenario_metacyclic(2, 2, 1, 1)?];
            if extended {
                out.push(scenario_metacyclic(3, 2, 1, 1)?);
            }
            Ok(out)
        }
        "quaternion" => Ok(vec![scenario_quaternion()?]),
        "splitting" => Ok(vec![scenario_splitting_without_vanishing()?]),
        "census" => {
            let mut out = Vec::new();
            for p in [2, 3] {
                out.push(scenario_census_with(p, 5, threads)?);
            }
            Ok(out)
        }
        "all" => {
            let mut out = run_scenario("cyclic-tower", extended, threads)?;
            out.extend(run_scenario("metacyclic", extended, threads)?);
            out.extend(run_scenario("quaternion", extended, threads)?);
            out.extend(run_scenario("splitting", extended, threads)?);
            out.extend(run_scenario("census", extended, threads)?);
            Ok(out)
        }
        other => Err(ScenarioError::BadParams(format!(
            "unknown scenario {:?}; known ids: cyclic-tower, metacyclic, quaternion, splitting, census, all",
            other
        ))),
    }
}

pub fn scenario_ids() -> &'static [&'static str] {
    &["cyclic-tower", "metacyclic", "quaternion", "splitting", "census", "all"]
}
