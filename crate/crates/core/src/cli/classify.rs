use crate::cli::report::{
    CurveSummary, FiberSumSymplecticVerdict, HamiltonianVerdict, HfOutcome, HfWitness,
    IsotopyReport, LinkSummary, MonodromyVerdict, PairReport, SmoothVerdict, REPORT_SCHEMA_VERSION,
};
use crate::cli::spec_file::{NamedCurve, SpecFile};
use crate::error::Result;
use crate::floer::{
    certify_fiber_sum, certify_interior, hf_pair, hf_self, Ambient, Side, TorusPairConfig,
};
use crate::maslov::ParityCertificate;
use crate::monodromy::{orbit_relations, order, MonodromyMap, Order};
use crate::novikov::{module_iso, rational_to_string};

/// Runs the full pipeline on every ordered pair of curves.
///
/// Failures local to a pair (a hypothesis that does not hold, curves that do
/// not intersect cleanly) end up as `Inconclusive` entries; only arithmetic
/// overflow aborts the report.
pub fn classify(spec: &SpecFile) -> Result<IsotopyReport> {
    let monodromy = spec.link.monodromy()?;
    let mono_order = order(&monodromy, spec.options.bound);
    let parity = match (&spec.ambient, &spec.maslov) {
        (Ambient::FiberSum(_), Some(m)) => Some(m.certificate()),
        _ => None,
    };

    let mut pairs = Vec::with_capacity(spec.curves.len() * spec.curves.len());
    for a in &spec.curves {
        for b in &spec.curves {
            pairs.push(classify_pair(
                spec,
                &monodromy,
                mono_order,
                parity.as_ref(),
                a,
                b,
            )?);
        }
    }

    Ok(IsotopyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        link: LinkSummary {
            factors: spec.link.factors.clone(),
            meridian_count: spec.link.meridian_count,
            fiber_genus: spec.link.fiber_genus(),
            monodromy: monodromy.matrix().clone(),
            order: mono_order,
        },
        ambient: match spec.ambient {
            Ambient::InteriorOnly => "interior".into(),
            Ambient::FiberSum(_) => "fiber_sum".into(),
        },
        fiber_sum_records: match &spec.ambient {
            Ambient::InteriorOnly => Vec::new(),
            Ambient::FiberSum(r) => r.clone(),
        },
        lambda_star: rational_to_string(spec.options.lambda_star.value()),
        bound: spec.options.bound,
        curves: spec
            .curves
            .iter()
            .map(|c| CurveSummary {
                name: c.name.clone(),
                class: c.class.coefficients().to_vec(),
            })
            .collect(),
        parity,
        pairs,
        warnings: spec.warnings.clone(),
    })
}

fn classify_pair(
    spec: &SpecFile,
    monodromy: &MonodromyMap,
    mono_order: Order,
    parity: Option<&ParityCertificate>,
    a: &NamedCurve,
    b: &NamedCurve,
) -> Result<PairReport> {
    let mut config = TorusPairConfig::new(
        spec.link.clone(),
        a.class.clone(),
        b.class.clone(),
        spec.ambient.clone(),
    )?
    .with_filtration(spec.options.lambda_star.clone())
    .with_window(spec.options.window);
    if let Some(p) = parity {
        config = config.with_parity(p.clone());
    }
    let interior = config.interior_view();

    let hf_self_first = HfOutcome::from(hf_self(&interior, Side::First));
    let hf_pair_out = HfOutcome::from(hf_pair(&interior));
    let hamiltonian_isotopic = distinguish(&hf_pair_out, &hf_self_first)
        .map(|witness| HamiltonianVerdict::No { witness })
        .unwrap_or_else(|reason| HamiltonianVerdict::Inconclusive { reason });

    let scan = orbit_scan_bound(mono_order, spec.options.bound);
    let relations: Vec<_> = orbit_relations(monodromy, &a.class, &b.class, scan)?
        .into_iter()
        .collect();

    let symplectic_isotopy_interior = if relations.is_empty() {
        MonodromyVerdict::NoEvidence {
            reason: format!("no M^k {} = +-{} for k <= {scan}", a.name, b.name),
        }
    } else {
        MonodromyVerdict::YesViaMonodromy {
            relations: relations.clone(),
            monodromy_order: mono_order.finite(),
        }
    };

    let lagrangian_isotopy_fibersum = match &spec.ambient {
        Ambient::InteriorOnly => MonodromyVerdict::NoEvidence {
            reason: "no fiber sum configured".into(),
        },
        Ambient::FiberSum(records) => {
            if relations.is_empty() {
                MonodromyVerdict::NoEvidence {
                    reason: "curves are not related by the monodromy".into(),
                }
            } else if mono_order.finite().is_none() {
                MonodromyVerdict::NoEvidence {
                    reason: format!("monodromy order exceeds bound {}", spec.options.bound),
                }
            } else if let Some(i) = records
                .iter()
                .position(|r| !r.meridian_disjoint_from_curves)
            {
                MonodromyVerdict::NoEvidence {
                    reason: format!(
                        "meridian {} is not attested disjoint from the isotopy",
                        i + 1
                    ),
                }
            } else {
                MonodromyVerdict::YesViaMonodromy {
                    relations: relations.clone(),
                    monodromy_order: mono_order.finite(),
                }
            }
        }
    };

    let symplectic_isotopy_fibersum = match &spec.ambient {
        Ambient::InteriorOnly => FiberSumSymplecticVerdict::Inconclusive {
            reason: "no fiber sum configured".into(),
        },
        Ambient::FiberSum(_) => match parity {
            None => FiberSumSymplecticVerdict::Inconclusive {
                reason: "no Maslov disc data".into(),
            },
            Some(p) if !p.is_even() => FiberSumSymplecticVerdict::Inconclusive {
                reason: "Maslov class not certified even".into(),
            },
            Some(p) => {
                let fs_pair = HfOutcome::from(hf_pair(&config));
                let fs_self = HfOutcome::from(hf_self(&config, Side::First));
                match distinguish(&fs_pair, &fs_self) {
                    Ok(witness) => FiberSumSymplecticVerdict::No {
                        parity: p.clone(),
                        witness,
                    },
                    Err(reason) => FiberSumSymplecticVerdict::Inconclusive { reason },
                }
            }
        },
    };

    let smooth_isotopy = match relations.first() {
        Some(r) => SmoothVerdict::EvidenceViaOrbit {
            k: r.k,
            sign: r.sign,
        },
        None => SmoothVerdict::NoEvidence {
            reason: "no orbit relation".into(),
        },
    };

    Ok(PairReport {
        first: a.name.clone(),
        second: b.name.clone(),
        hf_self_first,
        hf_pair: hf_pair_out,
        hamiltonian_isotopic,
        symplectic_isotopy_interior,
        lagrangian_isotopy_fibersum,
        symplectic_isotopy_fibersum,
        smooth_isotopy,
        certificate: certify_interior(&interior),
        fiber_sum_certificate: certify_fiber_sum(&config).ok(),
    })
}

/// Orbits are periodic once the order is known, so one period suffices.
pub fn orbit_scan_bound(order: Order, bound: u64) -> u64 {
    match order {
        Order::Finite(k) => k.min(bound),
        Order::ExceedsBound => bound,
    }
}

/// A witness that the pair and self groups differ, or why there is none.
fn distinguish(pair: &HfOutcome, own: &HfOutcome) -> std::result::Result<HfWitness, String> {
    match (pair, own) {
        (HfOutcome::Computed { ranks: p, .. }, HfOutcome::Computed { ranks: s, .. }) => {
            if module_iso(p, s) {
                Err("HF of the pair equals HF of the torus with itself".into())
            } else {
                Ok(HfWitness {
                    hf_pair: p.clone(),
                    hf_self: s.clone(),
                })
            }
        }
        (HfOutcome::Undetermined { reason }, _) | (_, HfOutcome::Undetermined { reason }) => {
            Err(reason.clone())
        }
    }
}
