use slnfoam::foamzoo::{build_relation, check_idempotents, check_relation, RelationId, ZooError};

fn holds(id: RelationId, params: &[usize], n: usize, d: usize) {
    let rel = build_relation(id, params, n).unwrap();
    let checks = check_relation(&rel, d, 1).unwrap();
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.holds(), "{id}{params:?} N={n} closure {}: {} vs {}", c.name, c.lhs, c.rhs);
    }
    if id.has_idempotents() {
        for c in check_idempotents(&rel, d, 1).unwrap() {
            assert!(c.holds(), "{id}{params:?} N={n}: t{}·t{} under {}", c.i, c.j, c.closure);
        }
    }
}

#[test]
fn closed_formulas() {
    holds(RelationId::Sphere, &[1], 2, 4);
    holds(RelationId::Sphere, &[2], 3, 3);
    holds(RelationId::Theta, &[1, 1], 3, 3);
    holds(RelationId::Theta, &[1, 2], 4, 2);
}

#[test]
fn neck_cutting() {
    holds(RelationId::NeckCutting, &[1], 2, 3);
    holds(RelationId::NeckCutting, &[2], 3, 2);
}

#[test]
fn dot_migration() {
    holds(RelationId::DotMigration, &[1, 1, 1], 2, 3);
    holds(RelationId::DotMigration, &[1, 2, 2, 1], 3, 2);
}

#[test]
fn digons() {
    holds(RelationId::Digon, &[1, 1], 2, 3);
    holds(RelationId::Digon, &[1, 2], 3, 2);
    holds(RelationId::DigonDur, &[1, 1], 3, 2);
    holds(RelationId::DigonDur, &[2, 1], 4, 1);
}

#[test]
fn matveev_piergallini() {
    holds(RelationId::MatveevPiergallini, &[1, 1, 1, 1], 4, 2);
}

#[test]
fn unreconstructed_relations_are_reported() {
    for id in [RelationId::Joint, RelationId::Square] {
        let (p, n) = id.smallest();
        assert!(matches!(build_relation(id, &p, n), Err(ZooError::Unavailable(_))));
    }
}

#[test]
fn parallel_checks_agree() {
    let rel = build_relation(RelationId::Digon, &[1, 1], 3).unwrap();
    assert_eq!(check_relation(&rel, 2, 1).unwrap(), check_relation(&rel, 2, 4).unwrap());
}
