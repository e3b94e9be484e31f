//! Random spec files and the report invariants every classification must
//! satisfy.

use std::fmt::Write as _;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use torus_floer::cli::report::{
    FiberSumSymplecticVerdict, HamiltonianVerdict, HfOutcome, MonodromyVerdict, SmoothVerdict,
};
use torus_floer::cli::IsotopyReport;
use torus_floer::floer::CertificateTarget;

use super::{primitive_curve, TREFOIL_MERIDIAN_SPEC};

#[derive(Clone, Debug)]
pub struct Disc {
    pub caps: Vec<i64>,
    pub defect: i64,
}

#[derive(Clone, Debug)]
pub struct Maslov {
    pub c1_even: bool,
    pub fiber: Disc,
    pub circle: Disc,
}

#[derive(Clone, Debug)]
pub struct Record {
    pub flags: [bool; 4],
}

#[derive(Clone, Debug)]
pub struct Spec {
    pub factors: Vec<String>,
    pub genus: usize,
    pub meridians: usize,
    pub curves: Vec<Vec<i64>>,
    pub records: Option<Vec<Record>>,
    pub maslov: Option<Maslov>,
}

impl Spec {
    pub fn render(&self) -> String {
        let mut s = String::from("schema_version = 1\n\n[link]\n");
        let _ = writeln!(s, "meridian_count = {}", self.meridians);
        let _ = writeln!(s, "factors = [{}]", self.factors.join(", "));
        for (i, c) in self.curves.iter().enumerate() {
            let _ = writeln!(s, "\n[[curves]]\nname = \"C{i}\"\nclass = {c:?}");
        }
        match &self.records {
            None => s.push_str("\n[ambient]\nkind = \"interior\"\n"),
            Some(rs) => {
                s.push_str("\n[ambient]\nkind = \"fiber_sum\"\n");
                for r in rs {
                    let [a, b, c, d] = r.flags;
                    let _ = write!(
                        s,
                        "\n[[ambient.records]]\nsummand = \"E(1)\"\ncomplement_simply_connected = {a}\n\
                         fiber_square_zero_symplectic_torus = {b}\nmeridian_disjoint_from_curves = {c}\n\
                         vanishing_cycle_identification = {d}\n"
                    );
                }
            }
        }
        if let Some(m) = &self.maslov {
            let _ = write!(
                s,
                "\n[maslov]\nc1_even = {}\n\n[maslov.fiber_disc]\ncaps = {:?}\ndefect = {}\n\n\
                 [maslov.circle_disc]\ncaps = {:?}\ndefect = {}\n",
                m.c1_even, m.fiber.caps, m.fiber.defect, m.circle.caps, m.circle.defect
            );
        }
        s.push_str("\n[options]\nbound = 64\n");
        s
    }
}

pub fn disc() -> impl Strategy<Value = Disc> {
    (proptest::collection::vec(-2i64..=1, 1..5), -3i64..=3)
        .prop_map(|(caps, defect)| Disc { caps, defect })
}

pub fn maslov() -> impl Strategy<Value = Maslov> {
    (prop::bool::weighted(0.8), disc(), disc()).prop_map(|(c1_even, fiber, circle)| Maslov {
        c1_even,
        fiber,
        circle,
    })
}

pub fn record() -> impl Strategy<Value = Record> {
    proptest::array::uniform4(prop::bool::weighted(0.85)).prop_map(|flags| Record { flags })
}

/// Curves biased towards the clean configurations: basis vectors, their
/// negatives and sums, plus occasional zero or far-apart classes.
pub fn curve_on(genus: usize) -> impl Strategy<Value = Vec<i64>> {
    let d = 2 * genus;
    prop_oneof![
        4 => (0..d, prop_oneof![Just(1i64), Just(-1i64)]).prop_map(move |(i, s)| {
            let mut v = vec![0; d];
            v[i] = s;
            v
        }),
        2 => (0..d, 0..d, prop_oneof![Just(1i64), Just(-1i64)]).prop_map(move |(i, j, s)| {
            let mut v = vec![0; d];
            v[i] = 1;
            if j != i {
                v[j] = s;
            }
            v
        }),
        1 => primitive_curve(genus, 2),
        1 => Just(vec![0; d]),
    ]
}

pub fn spec() -> impl Strategy<Value = Spec> {
    let factor = prop_oneof![
        3 => Just(("{ kind = \"trefoil\" }".to_string(), 1usize)),
        1 => (1usize..=2).prop_map(|n| (format!("{{ kind = \"torus_knot\", n = {n} }}"), n)),
    ];
    (
        proptest::collection::vec(factor, 1..=2),
        1usize..=3,
        any::<bool>(),
    )
        .prop_flat_map(|(factors, meridians, fiber_sum)| {
            let genus: usize = factors.iter().map(|f| f.1).sum();
            let records = if fiber_sum {
                proptest::collection::vec(record(), meridians)
                    .prop_map(Some)
                    .boxed()
            } else {
                Just(None).boxed()
            };
            (
                Just(factors.into_iter().map(|f| f.0).collect::<Vec<_>>()),
                Just(genus),
                Just(meridians),
                proptest::collection::vec(curve_on(genus), 1..=3),
                records,
                proptest::option::weighted(0.7, maslov()),
            )
        })
        .prop_map(|(factors, genus, meridians, curves, records, maslov)| {
            let maslov = if records.is_some() { maslov } else { None };
            Spec {
                factors,
                genus,
                meridians,
                curves,
                records,
                maslov,
            }
        })
}

/// The shipped fiber-sum example with one hypothesis broken.
pub fn mutated_example() -> impl Strategy<Value = (String, &'static str)> {
    let flags = [
        "complement_simply_connected = true",
        "fiber_square_zero_symplectic_torus = true",
        "meridian_disjoint_from_curves = true",
        "vanishing_cycle_identification = true",
    ];
    prop_oneof![
        (0usize..4).prop_map(move |i| (
            TREFOIL_MERIDIAN_SPEC.replacen(flags[i], &flags[i].replace("true", "false"), 1),
            "fiber-sum flag"
        )),
        Just((
            TREFOIL_MERIDIAN_SPEC.replace("class = [1, -1]", "class = [0, 0]"),
            "zero curve"
        )),
        Just((
            TREFOIL_MERIDIAN_SPEC.replace("class = [1, -1]", "class = [1, 2]"),
            "pairing 2"
        )),
        Just((
            TREFOIL_MERIDIAN_SPEC.replace("c1_even = true", "c1_even = false"),
            "c1"
        )),
        Just((
            TREFOIL_MERIDIAN_SPEC.replace("caps = [-2]", "caps = [-1]"),
            "odd disc"
        )),
    ]
}

pub fn check_report_invariants(r: &IsotopyReport) -> Result<(), TestCaseError> {
    for p in &r.pairs {
        let tag = format!("({}, {})", p.first, p.second);
        // no HF group without a passing certificate for what it was computed from
        let class = |n: &str| r.curves.iter().find(|c| c.name == n).unwrap().class.clone();
        let (c0, c1) = (class(&p.first), class(&p.second));
        let coincident = c0 == c1 || c0.iter().zip(&c1).all(|(a, b)| *a == -*b);
        if let HfOutcome::Computed { provenance, .. } = &p.hf_pair {
            prop_assert_eq!(format!("{:?}", provenance.scope), "Interior", "{}", tag);
            match provenance.target {
                CertificateTarget::Pair => prop_assert!(
                    p.certificate.passed(),
                    "{} computed without certificate",
                    tag
                ),
                CertificateTarget::Torus(_) => prop_assert!(coincident, "{}", tag),
            }
        }
        if !p.certificate.passed() && !coincident {
            prop_assert!(
                matches!(p.hf_pair, HfOutcome::Undetermined { .. }),
                "{}",
                tag
            );
            prop_assert!(
                matches!(
                    p.hamiltonian_isotopic,
                    HamiltonianVerdict::Inconclusive { .. }
                ),
                "{}",
                tag
            );
        }
        if let HfOutcome::Undetermined { reason } = &p.hf_pair {
            prop_assert!(!reason.is_empty());
        }
        match &p.hamiltonian_isotopic {
            HamiltonianVerdict::No { witness } => {
                prop_assert_ne!(&witness.hf_pair, &witness.hf_self);
                prop_assert_eq!(p.hf_pair.module(), Some(&witness.hf_pair));
                prop_assert_eq!(p.hf_self_first.module(), Some(&witness.hf_self));
            }
            HamiltonianVerdict::Inconclusive { reason } => prop_assert!(!reason.is_empty()),
        }
        match &p.symplectic_isotopy_fibersum {
            FiberSumSymplecticVerdict::No { parity, witness } => {
                prop_assert!(parity.is_even());
                prop_assert_eq!(r.ambient.as_str(), "fiber_sum");
                prop_assert_ne!(&witness.hf_pair, &witness.hf_self);
                let cert = p
                    .fiber_sum_certificate
                    .as_ref()
                    .expect("fiber-sum certificate");
                prop_assert!(cert.passed(), "{} fiber-sum No without certificate", tag);
            }
            FiberSumSymplecticVerdict::Inconclusive { reason } => prop_assert!(!reason.is_empty()),
        }
        for v in [
            &p.symplectic_isotopy_interior,
            &p.lagrangian_isotopy_fibersum,
        ] {
            match v {
                MonodromyVerdict::YesViaMonodromy { relations, .. } => {
                    prop_assert!(!relations.is_empty())
                }
                MonodromyVerdict::NoEvidence { reason } => prop_assert!(!reason.is_empty()),
            }
        }
        if let SmoothVerdict::EvidenceViaOrbit { k, sign } = p.smooth_isotopy {
            let MonodromyVerdict::YesViaMonodromy { relations, .. } =
                &p.symplectic_isotopy_interior
            else {
                return Err(TestCaseError::fail(format!(
                    "{tag}: orbit evidence without relations"
                )));
            };
            prop_assert!(relations.iter().any(|x| x.k == k && x.sign == sign));
        }
    }
    Ok(())
}

/// One broken hypothesis in an otherwise certifiable fiber-sum spec.
#[derive(Clone, Debug)]
pub enum Mutation {
    RecordFlag { record: usize, flag: usize },
    ZeroCurve(usize),
    C1NotEven,
    OddDisc,
}

/// A random spec with every attestation in place, then one mutation.
pub fn mutated_spec() -> impl Strategy<Value = (Spec, Mutation)> {
    spec()
        .prop_map(|mut s| {
            s.records = Some(vec![Record { flags: [true; 4] }; s.meridians]);
            s.maslov = Some(Maslov {
                c1_even: true,
                fiber: Disc {
                    caps: vec![-1; 4],
                    defect: -2,
                },
                circle: Disc {
                    caps: vec![-2],
                    defect: 0,
                },
            });
            s
        })
        .prop_flat_map(|s| {
            let m = s.meridians;
            let n = s.curves.len();
            let mutation = prop_oneof![
                (0..m, 0usize..4).prop_map(|(record, flag)| Mutation::RecordFlag { record, flag }),
                (0..n).prop_map(Mutation::ZeroCurve),
                Just(Mutation::C1NotEven),
                Just(Mutation::OddDisc),
            ];
            (Just(s), mutation)
        })
        .prop_map(|(mut s, m)| {
            match &m {
                Mutation::RecordFlag { record, flag } => {
                    s.records.as_mut().unwrap()[*record].flags[*flag] = false
                }
                Mutation::ZeroCurve(i) => s.curves[*i] = vec![0; 2 * s.genus],
                Mutation::C1NotEven => s.maslov.as_mut().unwrap().c1_even = false,
                Mutation::OddDisc => s.maslov.as_mut().unwrap().circle.caps = vec![-1],
            }
            (s, m)
        })
}

/// What a mutation must do to the report: the affected entries are
/// undetermined or inconclusive, never computed.
pub fn check_mutation(r: &IsotopyReport, m: &Mutation) -> Result<(), TestCaseError> {
    check_report_invariants(r)?;
    for (idx, p) in r.pairs.iter().enumerate() {
        let tag = format!("{m:?} ({}, {})", p.first, p.second);
        let fs_inconclusive = matches!(
            p.symplectic_isotopy_fibersum,
            FiberSumSymplecticVerdict::Inconclusive { .. }
        );
        match m {
            Mutation::RecordFlag { .. } => {
                prop_assert!(fs_inconclusive, "{}", tag);
                let cert = p
                    .fiber_sum_certificate
                    .as_ref()
                    .expect("fiber-sum certificate");
                prop_assert!(!cert.passed(), "{}", tag);
            }
            Mutation::C1NotEven | Mutation::OddDisc => {
                prop_assert!(fs_inconclusive, "{}", tag);
                prop_assert!(!r.parity.as_ref().unwrap().is_even(), "{}", tag);
            }
            Mutation::ZeroCurve(i) => {
                let n = r.curves.len();
                let (a, b) = (idx / n, idx % n);
                if a == *i || b == *i {
                    let undetermined = matches!(&p.hf_pair,
                        HfOutcome::Undetermined { reason } if reason.contains("could not be certified"));
                    prop_assert!(undetermined, "{}", tag);
                    prop_assert!(
                        matches!(
                            p.hamiltonian_isotopic,
                            HamiltonianVerdict::Inconclusive { .. }
                        ),
                        "{}",
                        tag
                    );
                    prop_assert!(fs_inconclusive, "{}", tag);
                }
                if a == *i {
                    prop_assert!(
                        matches!(p.hf_self_first, HfOutcome::Undetermined { .. }),
                        "{}",
                        tag
                    );
                }
            }
        }
    }
    Ok(())
}
