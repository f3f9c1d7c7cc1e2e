use kfg_core::census::{classes, witness_library};
use kfg_core::classifier::psi_witness_constructions;
use kfg_core::reference::reference;
use kfg_core::sums::{space_numbers, sum_space, verify_psi_implications, SumSpec};
use kfg_core::Subset;

fn recipes_from_witness(m: u8) -> Vec<kfg_core::classifier::RecipeOutcome> {
    let w = witness_library().unwrap().psi(m).unwrap();
    let t = w.space.topology();
    psi_witness_constructions(&t, Subset::new(w.subset, t.n()).unwrap()).unwrap()
}

#[test]
fn named_recipes() {
    let r = recipes_from_witness(21);
    assert!(
        r.iter()
            .any(|o| o.psi_b == 32 && o.recipe.contains("biA") && o.ok),
        "{r:?}"
    );
    let r = recipes_from_witness(53);
    assert!(r.iter().any(|o| o.psi_b == 54 && o.ok), "{r:?}");
}

/// Each recipe row has a working construction on the library witness of its ψ.
#[test]
fn every_recipe_row_works_on_its_witness() {
    for row in reference().table9.iter().filter(|r| !r.recipes.is_empty()) {
        let r = recipes_from_witness(row.psi_a);
        assert!(
            r.iter().any(|o| o.psi_b == row.psi_b && o.ok),
            "{} -> {}: {:?}",
            row.psi_a,
            row.psi_b,
            r.iter()
                .filter(|o| o.psi_b == row.psi_b)
                .collect::<Vec<_>>()
        );
    }
}

#[test]
fn implications_hold_on_small_spaces() {
    let rep = verify_psi_implications(5).unwrap();
    assert!(
        rep.ok(),
        "{:?} {:?}",
        rep.edge_failures,
        rep.recipe_failures
    );
    assert_eq!(rep.spaces, 1 + 3 + 9 + 33 + 139);
    assert!(rep.edges_checked > 0 && rep.recipe_rows_checked > 0);
}

/// Adding one more copy to a space that is not yet full raises k by 2 to 4
/// and k_f by 2 to 20.
#[test]
fn sum_increment_bounds() {
    for n in 1..=5 {
        for c in classes(n).iter() {
            let t = c.topology();
            let (big_k, big_kf) = (c.space_type.k_size(), c.space_type.kf_size());
            let mut prev = space_numbers(&t).unwrap();
            let mut copies = 1;
            while (copies + 1) * n <= 12 {
                copies += 1;
                let x = sum_space(&SumSpec::copies(&t, copies).unwrap()).unwrap();
                let next = space_numbers(&x).unwrap();
                if prev.k < big_k {
                    let d = next.k - prev.k;
                    assert!(
                        (2..=4).contains(&d),
                        "n={n} {:?} copies {copies}: k step {d}",
                        c.encoding
                    );
                }
                if prev.kf < big_kf {
                    let d = next.kf - prev.kf;
                    assert!(
                        (2..=20).contains(&d),
                        "n={n} {:?} copies {copies}: k_f step {d}",
                        c.encoding
                    );
                }
                prev = next;
            }
        }
    }
}
