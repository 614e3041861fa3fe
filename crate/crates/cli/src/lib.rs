//! Report-producing command implementations behind the `hbsiegel` binary.
//!
//! Every command emits a JSON-lines report: one record per check (or per
//! emitted object), then a trailing summary record echoing the configuration
//! and the version. Reports contain no timestamps and all randomness flows
//! from the seed in the configuration, so a fixed configuration reproduces a
//! byte-identical report.

use serde::Serialize;
use serde_json::{json, Value};

use hbsiegel_core::interval::{encloses_exact, max_offdiagonal_width, max_width};
use hbsiegel_core::matrix::RatMatrix;
use hbsiegel_core::modembed::{
    check_equivariance, compute_embedding_data, embed_matrix, embed_point,
};
use hbsiegel_core::numfield::NumberField;
use hbsiegel_core::rational::rational_string;
use hbsiegel_core::sample::{
    random_g_prime_element, random_gamma_prime_element, random_hb_point,
    random_sl_lattice_element, rng_from_seed,
};
use hbsiegel_core::schema::{
    matrix_rows, torsion_point_strings, FieldDescription, GSpJson, HBMatrixJson, HBPointJson,
    HBTorsionJson, SiegelPointJson,
};
use hbsiegel_core::symplectic::{in_gamma, rational_det, standard_form, trace_form_gram};
use hbsiegel_core::torsion::{
    check_cartesian_transport, check_lattice_equivariance, enumerate_torsion,
    hb_torsion_from_lattice, transport,
};
use hbsiegel_core::{BigRational, Error};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Effective configuration of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub field: FieldDescription,
    pub level: u32,
    pub precision: u32,
    pub seed: u64,
    pub trials: u32,
    pub budget: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CommandError> {
        if self.level < 3 {
            return Err(CommandError::input(format!(
                "level must be at least 3, got {}",
                self.level
            )));
        }
        if self.precision < 1 {
            return Err(CommandError::input("precision must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(CommandError::input("trials must be at least 1".into()));
        }
        Ok(())
    }

    fn field(&self) -> Result<NumberField, CommandError> {
        self.field
            .to_field()
            .map_err(|e| CommandError::input(format!("invalid field description: {e}")))
    }
}

/// Input or configuration problem; maps to exit code 2.
#[derive(Debug)]
pub struct CommandError {
    pub message: String,
}

impl CommandError {
    fn input(message: String) -> Self {
        CommandError { message }
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CommandError {}

/// Finished JSON-lines report. `failed > 0` maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for line in &self.lines {
            out.extend_from_slice(line.as_bytes());
            out.push(b'\n');
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else {
            0
        }
    }
}

struct ReportBuilder {
    command: &'static str,
    records: Vec<Value>,
    passed: usize,
    failed: usize,
}

impl ReportBuilder {
    fn new(command: &'static str) -> Self {
        ReportBuilder {
            command,
            records: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    fn check(&mut self, name: &str, pass: bool, witness: Value) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.records.push(json!({
            "type": "check",
            "name": name,
            "status": if pass { "pass" } else { "fail" },
            "witness": witness,
        }));
    }

    fn info(&mut self, name: &str, data: Value) {
        self.records.push(json!({
            "type": "info",
            "name": name,
            "data": data,
        }));
    }

    fn finish(self, config: &RunConfig) -> Report {
        let mut lines: Vec<String> = self
            .records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize"))
            .collect();
        let summary = json!({
            "type": "summary",
            "command": self.command,
            "passed": self.passed,
            "failed": self.failed,
            "config": serde_json::to_value(config).expect("config serializes"),
            "version": VERSION,
        });
        lines.push(serde_json::to_string(&summary).expect("summary serializes"));
        Report {
            lines,
            passed: self.passed,
            failed: self.failed,
        }
    }
}

/// `field-info`: construction diagnostics plus the derived data of the order.
pub fn run_field_info(config: &RunConfig) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let mut rep = ReportBuilder::new("field-info");
    // construction already verified these; record them as explicit checks
    rep.check("minpoly-squarefree", true, json!({}));
    rep.check(
        "totally-real",
        true,
        json!({"degree": nf.degree()}),
    );
    rep.check("basis-spans-an-order", true, json!({}));
    let emb = nf.real_embeddings(config.precision);
    rep.info(
        "field-data",
        json!({
            "degree": nf.degree(),
            "gram": matrix_rows(nf.gram()),
            "discriminant": rational_string(nf.discriminant()),
            "dual_basis": nf
                .dual_basis()
                .iter()
                .map(hbsiegel_core::schema::element_strings)
                .collect::<Vec<_>>(),
            "different_basis": nf
                .different_basis()
                .iter()
                .map(hbsiegel_core::schema::element_strings)
                .collect::<Vec<_>>(),
            "embeddings": emb
                .intervals()
                .iter()
                .map(|iv| json!({
                    "lo": rational_string(iv.lo()),
                    "hi": rational_string(iv.hi()),
                }))
                .collect::<Vec<_>>(),
        }),
    );
    Ok(rep.finish(config))
}

fn hb_matrix_witness(h: &hbsiegel_core::symplectic::HBMatrix) -> Value {
    serde_json::to_value(HBMatrixJson::from_matrix(h)).expect("matrix serializes")
}

/// `verify-embedding`: the ordered verification suites, deterministic under
/// the configured seed.
pub fn run_verify_embedding(config: &RunConfig) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let g = nf.degree();
    let n = config.level;
    let trials = config.trials as usize;
    let mut rng = rng_from_seed(config.seed);
    let mut rep = ReportBuilder::new("verify-embedding");

    // 1. dual-basis duality
    let mut duality = true;
    for (j, ejs) in nf.dual_basis().iter().enumerate() {
        for (k, ek) in nf.basis().iter().enumerate() {
            let expected = if j == k {
                BigRational::from_integer(1.into())
            } else {
                BigRational::from_integer(0.into())
            };
            duality &= nf.trace(&nf.mul(ejs, ek)) == expected;
        }
    }
    rep.check("dual-basis-duality", duality, json!({}));

    // 2. trace form equals the standard symplectic form
    let form_ok = trace_form_gram(&nf) == standard_form(g);
    rep.check(
        "trace-form-is-standard",
        form_ok,
        json!({"gram": matrix_rows(&trace_form_gram(&nf))}),
    );

    // 3. homomorphism trials on G'(Q)
    let mut hom_fail: Option<Value> = None;
    for _ in 0..trials {
        let h1 = random_g_prime_element(&nf, &mut rng, 6);
        let h2 = random_g_prime_element(&nf, &mut rng, 6);
        let lhs = embed_matrix(&nf, &h1.mul(&nf, &h2));
        let rhs = match (embed_matrix(&nf, &h1), embed_matrix(&nf, &h2)) {
            (Ok(a), Ok(b)) => Ok(a.mul(&b)),
            _ => Err(Error::NotInGPrime),
        };
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a.matrix() == b.matrix() && a.nu() == b.nu());
        if !ok {
            hom_fail = Some(json!({"h1": hb_matrix_witness(&h1), "h2": hb_matrix_witness(&h2)}));
            break;
        }
    }
    rep.check(
        "embedding-homomorphism",
        hom_fail.is_none(),
        hom_fail.clone().unwrap_or_else(|| json!({"trials": trials})),
    );

    // 4. SL(D^-1 (+) O) lands in the integral symplectic group
    let mut sl_fail: Option<Value> = None;
    for _ in 0..trials {
        let h = random_sl_lattice_element(&nf, &mut rng, 12);
        let ok = match embed_matrix(&nf, &h) {
            Ok(m) => m.is_integral() && m.nu() == &BigRational::from_integer(1.into()),
            Err(_) => false,
        };
        if !ok {
            sl_fail = Some(hb_matrix_witness(&h));
            break;
        }
    }
    rep.check(
        "sl-lattice-to-integral-symplectic",
        sl_fail.is_none(),
        sl_fail.clone().unwrap_or_else(|| json!({"trials": trials})),
    );

    // 5. Gamma'(n) lands in Gamma(n)
    let mut gp_fail: Option<Value> = None;
    for _ in 0..trials {
        let h = random_gamma_prime_element(&nf, &mut rng, n, 12);
        let ok = match embed_matrix(&nf, &h) {
            Ok(m) => in_gamma(m.matrix(), n).unwrap_or(false),
            Err(_) => false,
        };
        if !ok {
            gp_fail = Some(hb_matrix_witness(&h));
            break;
        }
    }
    rep.check(
        "gamma-prime-to-gamma",
        gp_fail.is_none(),
        gp_fail.clone().unwrap_or_else(|| json!({"trials": trials, "level": n})),
    );

    // 6. equivariance of the point map
    let mut eq_fail: Option<Value> = None;
    for _ in 0..trials {
        let h = random_sl_lattice_element(&nf, &mut rng, 6);
        let tau = random_hb_point(&nf, &mut rng);
        let ok = check_equivariance(&nf, &h, &tau).unwrap_or(false);
        if !ok {
            eq_fail = Some(json!({
                "h": hb_matrix_witness(&h),
                "tau": serde_json::to_value(HBPointJson::from_point(&tau)).unwrap(),
            }));
            break;
        }
    }
    rep.check(
        "equivariance",
        eq_fail.is_none(),
        eq_fail.clone().unwrap_or_else(|| json!({"trials": trials})),
    );

    // 7. certified interval enclosure of R^t R'
    let data = compute_embedding_data(&nf, config.precision);
    let prod = data.enclosure_product();
    let encl_ok = encloses_exact(&prod, &RatMatrix::identity(g));
    rep.check(
        "interval-enclosure-identity",
        encl_ok,
        json!({
            "precision": config.precision,
            "max_width": rational_string(&max_width(&prod)),
            "max_offdiagonal_width": rational_string(&max_offdiagonal_width(&prod)),
        }),
    );

    Ok(rep.finish(config))
}

/// `map matrix`: embed a 2x2 matrix over the field.
pub fn run_map_matrix(config: &RunConfig, input: &HBMatrixJson) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let h = input
        .to_matrix(&nf)
        .map_err(|e| CommandError::input(format!("invalid matrix input: {e}")))?;
    let mut rep = ReportBuilder::new("map");
    match embed_matrix(&nf, &h) {
        Ok(m) => {
            rep.check("matrix-in-g-prime", true, json!({"nu": rational_string(m.nu())}));
            rep.info(
                "embedded-matrix",
                serde_json::to_value(GSpJson::from_element(&m)).unwrap(),
            );
        }
        Err(e) => {
            rep.check(
                "matrix-in-g-prime",
                false,
                json!({"reason": e.to_string(), "input": hb_matrix_witness(&h)}),
            );
        }
    }
    Ok(rep.finish(config))
}

/// `map point`: embed a point of the product upper half-plane.
pub fn run_map_point(config: &RunConfig, input: &HBPointJson) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let mut rep = ReportBuilder::new("map");
    match input.to_point(&nf).and_then(|tau| embed_point(&nf, &tau)) {
        Ok(s) => {
            rep.check("point-in-upper-half-space", true, json!({}));
            rep.info(
                "embedded-point",
                serde_json::to_value(SiegelPointJson::from_point(&s)).unwrap(),
            );
        }
        Err(Error::BadRational(s)) => {
            return Err(CommandError::input(format!("invalid rational literal {s:?}")));
        }
        Err(Error::BadCoordinateLength { got, expected }) => {
            return Err(CommandError::input(format!(
                "coordinate vector has length {got}, expected {expected}"
            )));
        }
        Err(e) => {
            rep.check(
                "point-in-upper-half-space",
                false,
                json!({"reason": e.to_string()}),
            );
        }
    }
    Ok(rep.finish(config))
}

/// `map torsion`: transport a field-side torsion point.
pub fn run_map_torsion(config: &RunConfig, input: &HBTorsionJson) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let mut rep = ReportBuilder::new("map");
    match input.to_torsion(&nf) {
        Ok(t) => {
            let out = transport(&nf, &t);
            rep.check("torsion-point-valid", true, json!({}));
            rep.info(
                "transported-torsion",
                json!({
                    "input": serde_json::to_value(HBTorsionJson::from_torsion(&t)).unwrap(),
                    "output": torsion_point_strings(&out),
                    "order": out.order(),
                }),
            );
        }
        Err(Error::BadRational(s)) => {
            return Err(CommandError::input(format!("invalid rational literal {s:?}")));
        }
        Err(Error::BadCoordinateLength { got, expected }) => {
            return Err(CommandError::input(format!(
                "coordinate vector has length {got}, expected {expected}"
            )));
        }
        Err(e) => {
            rep.check("torsion-point-valid", false, json!({"reason": e.to_string()}));
        }
    }
    Ok(rep.finish(config))
}

/// `torsion-suite`: enumerate the full n-torsion, emit the transported
/// table, and run the transport verification suites.
pub fn run_torsion_suite(config: &RunConfig) -> Result<Report, CommandError> {
    config.validate()?;
    let nf = config.field()?;
    let g = nf.degree();
    let n = config.level;
    let count = u64::from(n).checked_pow(2 * g as u32);
    match count {
        Some(c) if c <= config.budget => {}
        _ => {
            return Err(CommandError::input(format!(
                "budget exceeded: {n}^{} torsion points over budget {}",
                2 * g,
                config.budget
            )));
        }
    }
    let mut rng = rng_from_seed(config.seed);
    let mut rep = ReportBuilder::new("torsion-suite");

    let points: Vec<_> = enumerate_torsion(n, g).collect();
    rep.check(
        "torsion-count",
        points.len() as u64 == count.unwrap(),
        json!({"count": points.len()}),
    );

    // transported table plus bijectivity and order preservation
    let mut bijective = true;
    let mut order_ok = true;
    let mut seen = std::collections::BTreeSet::new();
    let mut table = Vec::with_capacity(points.len());
    for v in &points {
        let t = hb_torsion_from_lattice(&nf, v)
            .map_err(|e| CommandError::input(format!("internal enumeration failure: {e}")))?;
        let image = transport(&nf, &t);
        bijective &= &image == v;
        order_ok &= t.order(&nf) == image.order();
        seen.insert(image.clone());
        table.push(json!({
            "input": serde_json::to_value(HBTorsionJson::from_torsion(&t)).unwrap(),
            "output": torsion_point_strings(&image),
            "order": image.order(),
        }));
    }
    bijective &= seen.len() == points.len();
    rep.check("transport-bijective", bijective, json!({"images": seen.len()}));
    rep.check("transport-order-preserving", order_ok, json!({}));

    // additivity on seeded random pairs
    let mut additive = true;
    for _ in 0..config.trials {
        let a = hbsiegel_core::sample::random_hb_torsion(&nf, &mut rng, n);
        let b = hbsiegel_core::sample::random_hb_torsion(&nf, &mut rng, n);
        let lhs = transport(&nf, &a.add(&nf, &b).expect("same level"));
        let rhs = transport(&nf, &a).add(&transport(&nf, &b)).expect("same shape");
        additive &= lhs == rhs;
    }
    rep.check("transport-additive", additive, json!({"trials": config.trials}));

    // the cartesian-square check at 5 seeded base points, for every point
    let taus: Vec<_> = (0..5).map(|_| random_hb_point(&nf, &mut rng)).collect();
    let mut cartesian = true;
    'outer: for v in &points {
        let t = hb_torsion_from_lattice(&nf, v).expect("valid lattice point");
        for tau in &taus {
            if !check_cartesian_transport(&nf, &t, tau).unwrap_or(false) {
                cartesian = false;
                break 'outer;
            }
        }
    }
    rep.check(
        "cartesian-transport",
        cartesian,
        json!({"points": points.len(), "base_points": taus.len()}),
    );

    // lattice equivariance on seeded random pairs
    let mut equivariant = true;
    for _ in 0..config.trials {
        let t = hbsiegel_core::sample::random_hb_torsion(&nf, &mut rng, n);
        let h = random_sl_lattice_element(&nf, &mut rng, 8);
        equivariant &= check_lattice_equivariance(&nf, &t, &h).unwrap_or(false);
    }
    rep.check(
        "lattice-equivariance",
        equivariant,
        json!({"trials": config.trials}),
    );

    // sanity cross-check that rational determinants behave on a sample
    let h = random_sl_lattice_element(&nf, &mut rng, 4);
    debug_assert_eq!(rational_det(&nf, &h), Some(BigRational::from_integer(1.into())));

    for row in table {
        rep.info("transport", row);
    }
    Ok(rep.finish(config))
}
