//! Floer cohomology of product tori `S^1 x gamma`.
//!
//! The disc-counting arguments that make these groups computable are not
//! reproduced here. Instead their hypotheses are checked (or, for the
//! geometric ones, recorded as attested) in an [`ObstructionCertificate`],
//! and the collapse of the action spectral sequence is gated on that
//! certificate. Nothing is computed when a hypothesis fails.
//!
//! Caveat: even when both tori bound no nonconstant discs individually,
//! discs with boundary on the union `L_0 u L_1` can exist (the fiber torus
//! cut along two curves is one). They are not Floer strips and play no role
//! here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maslov::ParityCertificate;
use crate::monodromy::FiberedLinkSpec;
use crate::novikov::{FiltrationParam, GradedModule};
use crate::surface::{CurveClass, SurfaceModel};

/// Which of the two tori.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

/// Attested data about one fiber-sum site `S^1 x m_i = F_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberSumRecord {
    /// Name of the glued manifold, e.g. `E(1)`.
    pub summand: String,
    /// `pi_1(X_i - N(F_i)) = 0`.
    pub complement_simply_connected: bool,
    /// `F_i` is a symplectic torus of self-intersection zero.
    pub fiber_square_zero_symplectic_torus: bool,
    /// The meridian `m_i` misses every curve `gamma`.
    pub meridian_disjoint_from_curves: bool,
    /// The gluing identifies `pt x m_i` with a vanishing cycle of `F_i`.
    pub vanishing_cycle_identification: bool,
}

impl FiberSumRecord {
    /// A record with every hypothesis attested.
    pub fn attested(summand: impl Into<String>) -> Self {
        Self {
            summand: summand.into(),
            complement_simply_connected: true,
            fiber_square_zero_symplectic_torus: true,
            meridian_disjoint_from_curves: true,
            vanishing_cycle_identification: true,
        }
    }

    fn flags(&self) -> [(&'static str, bool, &'static str); 4] {
        [
            (
                "complement_simply_connected",
                self.complement_simply_connected,
                "fiber sum: summand complement of F_i is simply connected",
            ),
            (
                "fiber_square_zero_symplectic_torus",
                self.fiber_square_zero_symplectic_torus,
                "fiber sum: F_i is an embedded symplectic torus of square zero",
            ),
            (
                "meridian_disjoint_from_curves",
                self.meridian_disjoint_from_curves,
                "fiber sum: meridian m_i is chosen away from the loops gamma",
            ),
            (
                "vanishing_cycle_identification",
                self.vanishing_cycle_identification,
                "fiber sum: pt x m_i is glued to a vanishing cycle of F_i",
            ),
        ]
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "records", rename_all = "snake_case")]
pub enum Ambient {
    /// The product `S^1 x M_L` itself.
    InteriorOnly,
    /// The fiber sum `X_L`, one record per link component.
    FiberSum(Vec<FiberSumRecord>),
}

impl Ambient {
    pub fn is_fiber_sum(&self) -> bool {
        matches!(self, Ambient::FiberSum(_))
    }
}

/// Finite `(p, q)` window of the E_2 page. `pmax >= 1` so that one full
/// period of the Novikov grading is visible.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PageWindow {
    pub pmax: i64,
    pub qmax: i64,
}

impl PageWindow {
    pub fn new(pmax: i64, qmax: i64) -> Result<Self> {
        if pmax < 1 || qmax < 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self { pmax, qmax })
    }
}

impl Default for PageWindow {
    fn default() -> Self {
        Self { pmax: 8, qmax: 8 }
    }
}

/// Two product tori `L_i = S^1 x gamma_i` in a link-surgery manifold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPairConfig {
    surface: SurfaceModel,
    gamma0: CurveClass,
    gamma1: CurveClass,
    link: FiberedLinkSpec,
    ambient: Ambient,
    parity: Option<ParityCertificate>,
    filtration: FiltrationParam,
    window: PageWindow,
}

impl TorusPairConfig {
    /// Checks only shapes: the curves must live on the link's fiber and a
    /// fiber sum needs one record per meridian. Everything the obstruction
    /// argument needs (primitivity, intersection pattern, genus) is left to
    /// the certificates so that failures are recorded rather than thrown.
    pub fn new(
        link: FiberedLinkSpec,
        gamma0: CurveClass,
        gamma1: CurveClass,
        ambient: Ambient,
    ) -> Result<Self> {
        let genus = link.fiber_genus();
        let surface = if genus == 0 {
            SurfaceModel::empty()
        } else {
            SurfaceModel::standard(genus)?
        };
        surface.check_len(gamma0.dim())?;
        surface.check_len(gamma1.dim())?;
        if let Ambient::FiberSum(records) = &ambient {
            if records.len() != link.meridian_count {
                return Err(Error::RecordCountMismatch {
                    expected: link.meridian_count,
                    found: records.len(),
                });
            }
        }
        Ok(Self {
            surface,
            gamma0,
            gamma1,
            link,
            ambient,
            parity: None,
            filtration: FiltrationParam::default(),
            window: PageWindow::default(),
        })
    }

    pub fn with_parity(mut self, parity: ParityCertificate) -> Self {
        self.parity = Some(parity);
        self
    }

    pub fn with_filtration(mut self, filtration: FiltrationParam) -> Self {
        self.filtration = filtration;
        self
    }

    pub fn with_window(mut self, window: PageWindow) -> Self {
        self.window = window;
        self
    }

    /// Same tori, viewed in `S^1 x M_L` before any fiber sum.
    pub fn interior_view(&self) -> Self {
        Self {
            ambient: Ambient::InteriorOnly,
            parity: None,
            ..self.clone()
        }
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn gamma(&self, side: Side) -> &CurveClass {
        match side {
            Side::First => &self.gamma0,
            Side::Second => &self.gamma1,
        }
    }

    pub fn link(&self) -> &FiberedLinkSpec {
        &self.link
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn parity(&self) -> Option<&ParityCertificate> {
        self.parity.as_ref()
    }

    pub fn filtration(&self) -> &FiltrationParam {
        &self.filtration
    }

    pub fn window(&self) -> PageWindow {
        self.window
    }

    fn pairing(&self) -> i64 {
        self.surface
            .intersection_number(&self.gamma0, &self.gamma1)
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateScope {
    /// No nonconstant discs or strips in `S^1 x M_L`.
    Interior,
    /// No nonconstant (perturbed) discs or strips in the fiber sum `X_L`.
    FiberSum,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "side", rename_all = "snake_case")]
pub enum CertificateTarget {
    /// Floer strips between the two tori.
    Pair,
    /// Discs on a single torus.
    Torus(Side),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub anchor: String,
}

impl HypothesisCheck {
    fn new(name: impl Into<String>, passed: bool, anchor: &str) -> Self {
        Self {
            name: name.into(),
            passed,
            anchor: anchor.to_owned(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    NoNonconstantDiscs,
    Undetermined,
}

/// A record of which hypotheses of the no-discs argument hold. The
/// conclusion is `NoNonconstantDiscs` exactly when every check passed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub scope: CertificateScope,
    pub target: CertificateTarget,
    pub checks: Vec<HypothesisCheck>,
    pub conclusion: Conclusion,
}

impl ObstructionCertificate {
    fn new(
        scope: CertificateScope,
        target: CertificateTarget,
        checks: Vec<HypothesisCheck>,
    ) -> Self {
        let conclusion = if checks.iter().all(|c| c.passed) {
            Conclusion::NoNonconstantDiscs
        } else {
            Conclusion::Undetermined
        };
        Self {
            scope,
            target,
            checks,
            conclusion,
        }
    }

    pub fn passed(&self) -> bool {
        self.conclusion == Conclusion::NoNonconstantDiscs
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn undetermined_error(&self) -> Error {
        Error::ObstructionUndetermined(format!(
            "{:?}/{:?} failed: {}",
            self.scope,
            self.target,
            self.failed_checks().join(", ")
        ))
    }
}

const ANCHOR_GENUS: &str = "no discs in S^1 x M_L: fiber genus >= 1 (nontrivially fibered)";
const ANCHOR_PRIMITIVE: &str =
    "no discs on S^1 x gamma: gamma nontrivial and nontorsion in the fiber";
const ANCHOR_TRANSVERSE: &str = "no Floer strips: loops meet transversely in exactly one point";
const ANCHOR_INDEPENDENT: &str =
    "no Floer strips: no nonzero multiples of the loops are homologous";
const ANCHOR_MERIDIANS: &str = "fiber sum: every link component contributes a meridian site";

fn genus_check(config: &TorusPairConfig) -> HypothesisCheck {
    HypothesisCheck::new(
        "fiber_genus_at_least_one",
        config.surface.genus() >= 1,
        ANCHOR_GENUS,
    )
}

fn primitive_check(config: &TorusPairConfig, side: Side) -> HypothesisCheck {
    let name = match side {
        Side::First => "gamma0_primitive",
        Side::Second => "gamma1_primitive",
    };
    HypothesisCheck::new(name, config.gamma(side).is_primitive(), ANCHOR_PRIMITIVE)
}

fn fiber_sum_checks(config: &TorusPairConfig) -> Result<Vec<HypothesisCheck>> {
    let Ambient::FiberSum(records) = &config.ambient else {
        return Err(Error::AmbientMismatch {
            expected: "fiber-sum",
        });
    };
    let mut checks = vec![HypothesisCheck::new(
        "meridian_count_at_least_one",
        !records.is_empty(),
        ANCHOR_MERIDIANS,
    )];
    for (i, record) in records.iter().enumerate() {
        for (name, passed, anchor) in record.flags() {
            checks.push(HypothesisCheck::new(
                format!("meridian_{}_{name}", i + 1),
                passed,
                anchor,
            ));
        }
    }
    Ok(checks)
}

/// Hypotheses for the absence of nonconstant discs on either torus and of
/// nonconstant Floer strips between them in `S^1 x M_L`.
pub fn certify_interior(config: &TorusPairConfig) -> ObstructionCertificate {
    let s = &config.surface;
    let independent = s
        .independence_check(&config.gamma0, &config.gamma1)
        .unwrap_or(false);
    let checks = vec![
        genus_check(config),
        HypothesisCheck::new(
            "single_transverse_intersection",
            config.pairing().abs() == 1,
            ANCHOR_TRANSVERSE,
        ),
        primitive_check(config, Side::First),
        primitive_check(config, Side::Second),
        HypothesisCheck::new("curves_independent", independent, ANCHOR_INDEPENDENT),
    ];
    ObstructionCertificate::new(CertificateScope::Interior, CertificateTarget::Pair, checks)
}

/// Single-torus version: `pi_2(S^1 x M_L, L_i) = 0` needs only the genus
/// bound and a primitive loop.
pub fn certify_interior_torus(config: &TorusPairConfig, side: Side) -> ObstructionCertificate {
    let checks = vec![genus_check(config), primitive_check(config, side)];
    ObstructionCertificate::new(
        CertificateScope::Interior,
        CertificateTarget::Torus(side),
        checks,
    )
}

/// The interior hypotheses plus every attested fiber-sum flag.
pub fn certify_fiber_sum(config: &TorusPairConfig) -> Result<ObstructionCertificate> {
    let mut checks = certify_interior(config).checks;
    checks.extend(fiber_sum_checks(config)?);
    Ok(ObstructionCertificate::new(
        CertificateScope::FiberSum,
        CertificateTarget::Pair,
        checks,
    ))
}

pub fn certify_fiber_sum_torus(
    config: &TorusPairConfig,
    side: Side,
) -> Result<ObstructionCertificate> {
    let mut checks = certify_interior_torus(config, side).checks;
    checks.extend(fiber_sum_checks(config)?);
    Ok(ObstructionCertificate::new(
        CertificateScope::FiberSum,
        CertificateTarget::Torus(side),
        checks,
    ))
}

/// Betti numbers of `L_0 n L_1`: a circle when the loops meet once, the whole
/// torus when they coincide up to orientation.
pub fn clean_intersection_betti(config: &TorusPairConfig) -> Result<Vec<u64>> {
    if config.gamma0.equal_up_to_sign(&config.gamma1) {
        return Ok(vec![1, 2, 1]);
    }
    match config.pairing() {
        1 | -1 => Ok(vec![1, 1]),
        p => Err(Error::NotCleanlyIntersecting(p)),
    }
}

/// Number of band generators of `gr_q` of the degree-`d` part of the Novikov
/// ring: one (`T^l e^{d/2}` for `l` in the band) when `d` is even, none
/// otherwise.
pub fn novikov_band_rank(degree: i64) -> u64 {
    u64::from(degree % 2 == 0)
}

/// The E_2 page `E^{p,q} = sum_k H^k(L_0 n L_1) (x) gr_q(Lambda^{p-k})`,
/// restricted to a finite window.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpectralSequencePage {
    pub source_betti: Vec<u64>,
    pub step: FiltrationParam,
    pub window: PageWindow,
    /// Per-cell contribution of each `H^k`, indexed by `k`.
    contributions: BTreeMap<(i64, i64), Vec<u64>>,
}

impl SpectralSequencePage {
    pub fn rank(&self, p: i64, q: i64) -> u64 {
        self.contributions
            .get(&(p, q))
            .map_or(0, |c| c.iter().sum())
    }

    pub fn contributions(&self, p: i64, q: i64) -> Option<&[u64]> {
        self.contributions.get(&(p, q)).map(Vec::as_slice)
    }

    /// Cell ranks keyed by `(p, q)`.
    pub fn entries(&self) -> BTreeMap<(i64, i64), u64> {
        self.contributions
            .iter()
            .map(|(&k, c)| (k, c.iter().sum()))
            .collect()
    }

    pub fn total_rank(&self) -> u64 {
        self.contributions.values().flatten().sum()
    }

    /// Per-`k` totals over one period `p0, p0 + 1` of the grading in band `q`.
    pub fn period_totals(&self, p0: i64, q: i64) -> Vec<u64> {
        let mut out = vec![0; self.source_betti.len()];
        for p in [p0, p0 + 1] {
            if let Some(c) = self.contributions.get(&(p, q)) {
                for (o, x) in out.iter_mut().zip(c) {
                    *o += x;
                }
            }
        }
        out
    }
}

pub fn e2_page(
    betti: &[u64],
    step: &FiltrationParam,
    window: PageWindow,
) -> Result<SpectralSequencePage> {
    if betti.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut contributions = BTreeMap::new();
    for p in 0..=window.pmax {
        for q in 0..=window.qmax {
            let cell: Vec<u64> = betti
                .iter()
                .enumerate()
                .map(|(k, &b)| b * novikov_band_rank(p - k as i64))
                .collect();
            contributions.insert((p, q), cell);
        }
    }
    Ok(SpectralSequencePage {
        source_betti: betti.to_vec(),
        step: step.clone(),
        window,
        contributions,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CollapseProvenance {
    pub scope: CertificateScope,
    pub target: CertificateTarget,
    /// Filtration step below which all local curves have area.
    pub step: FiltrationParam,
    pub window: PageWindow,
}

/// A Floer cohomology group with a record of the certificate that justified
/// the collapse.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FloerGroup {
    pub module: GradedModule,
    pub provenance: CollapseProvenance,
}

/// With no nonconstant discs there are no higher differentials, so the page
/// is already `E_infinity`. The module is read off one grading period of the
/// lowest band.
pub fn collapse(page: &SpectralSequencePage, cert: &ObstructionCertificate) -> Result<FloerGroup> {
    if !cert.passed() {
        return Err(cert.undetermined_error());
    }
    let module = GradedModule::new(page.period_totals(0, 0));
    Ok(FloerGroup {
        module,
        provenance: CollapseProvenance {
            scope: cert.scope,
            target: cert.target,
            step: page.step.clone(),
            window: page.window,
        },
    })
}

fn parity_gate(config: &TorusPairConfig) -> Result<()> {
    match (&config.ambient, &config.parity) {
        (Ambient::InteriorOnly, _) => Ok(()),
        (Ambient::FiberSum(_), Some(p)) if p.is_even() => Ok(()),
        (Ambient::FiberSum(_), _) => Err(Error::MaslovParityUnverified),
    }
}

/// `HF(L_i, L_i)`.
pub fn hf_self(config: &TorusPairConfig, side: Side) -> Result<FloerGroup> {
    let cert = match config.ambient {
        Ambient::InteriorOnly => certify_interior_torus(config, side),
        Ambient::FiberSum(_) => certify_fiber_sum_torus(config, side)?,
    };
    if !cert.passed() {
        return Err(cert.undetermined_error());
    }
    parity_gate(config)?;
    let page = e2_page(&[1, 2, 1], &config.filtration, config.window)?;
    collapse(&page, &cert)
}

/// `HF(L_0, L_1)`. Coincident loops route to [`hf_self`].
pub fn hf_pair(config: &TorusPairConfig) -> Result<FloerGroup> {
    if config.gamma0.equal_up_to_sign(&config.gamma1) {
        return hf_self(config, Side::First);
    }
    let cert = match config.ambient {
        Ambient::InteriorOnly => certify_interior(config),
        Ambient::FiberSum(_) => certify_fiber_sum(config)?,
    };
    if !cert.passed() {
        return Err(cert.undetermined_error());
    }
    parity_gate(config)?;
    let betti = clean_intersection_betti(config)?;
    let page = e2_page(&betti, &config.filtration, config.window)?;
    collapse(&page, &cert)
}
