use matroid_hpp::catalog;
use matroid_hpp::certificate::Certificate;
use matroid_hpp::pipeline::{self, Classifier, Config, Stage, Status};
use matroid_hpp::subset;

fn cheap() -> Vec<&'static str> {
    vec!["U23par", "U24", "K4", "F7", "F7-", "P7", "S8"]
}

#[test]
fn dual_has_the_same_status() {
    let c = Classifier::new(Config::default());
    for name in cheap() {
        let m = catalog::builtin(name).unwrap().matroid;
        let v = c.classify(name, &m);
        let d = c.classify(name, &m.dual());
        assert_eq!(v.status, d.status, "{name}");
    }
}

#[test]
fn certificates_verify_and_never_conflict() {
    for name in cheap() {
        let m = catalog::builtin(name).unwrap().matroid;
        let v = pipeline::classify_one(&m, &Config::default());
        v.verify_certificates(&m).unwrap();
        let certs = v.all_certificates();
        for a in &certs {
            for b in &certs {
                let clash = matches!((a, b), (Certificate::Sos { .. }, Certificate::NegativePoint { .. }))
                    && a.pair() == b.pair();
                assert!(!clash, "{name}: SOS and negative point for the same pair");
            }
        }
        match v.status {
            Status::NotHpp => assert!(certs.iter().any(|c| c.disproves_hpp()), "{name}"),
            Status::Hpp if v.decided_by == Stage::Sos => {
                assert!(certs.iter().any(|c| matches!(c, Certificate::Sos { .. })), "{name}")
            }
            _ => {}
        }
    }
}

#[test]
fn excluded_minor_witness_is_itself_not_hpp() {
    let s8 = catalog::s8();
    let v = pipeline::classify_one(&s8, &Config::default());
    assert_eq!((v.status, v.decided_by), (Status::NotHpp, Stage::ForbiddenMinor));
    let Some(Certificate::ForbiddenMinor { minor, .. }) = v.certificates.first() else { panic!("no witness") };
    let n = catalog::builtin(minor).unwrap().matroid;
    assert_eq!(pipeline::classify_one(&n, &Config::default()).status, Status::NotHpp);
}

#[test]
fn facets_of_hpp_matroids_are_hpp() {
    let config = Config::default();
    for name in ["K4", "P7"] {
        let m = catalog::builtin(name).unwrap().matroid;
        assert_eq!(pipeline::classify_one(&m, &config).status, Status::Hpp);
        for s in m.flats().into_iter().filter(|&s| s != 0 && s != m.ground_set()) {
            let face = m.polytope_face_matroid(s).unwrap();
            let status = pipeline::classify_one(&face, &config).status;
            assert_eq!(status, Status::Hpp, "{name}, flat {}", subset::display(s));
        }
    }
}

#[test]
fn empty_catalog_gives_empty_report() {
    let r = pipeline::classify_catalog(&[], &Config::default());
    assert!(r.verdicts.is_empty());
    assert_eq!(r.schema_version, pipeline::SCHEMA_VERSION);
}
