//! Ghost and coghost ideals, and the torsion-pair checks that need no triangles.

use crate::exactla::{unit, LinMap, Subspace};
use crate::ideals::Ideal;

/// `Gh_I(X, Y) = {f : f ∘ i = 0 for every i ∈ I(-, X)}`.
pub fn ghost_ideal(ideal: &Ideal) -> Ideal {
    annihilator_ideal(ideal, true)
}

/// `CoGh_I(X, Y) = {f : i ∘ f = 0 for every i ∈ I(Y, -)}`.
pub fn coghost_ideal(ideal: &Ideal) -> Ideal {
    annihilator_ideal(ideal, false)
}

fn annihilator_ideal(ideal: &Ideal, ghost: bool) -> Ideal {
    let cat = ideal.category();
    let field = cat.field();
    let mut comps = Vec::new();
    for x in cat.objects() {
        for y in cat.objects() {
            let d = cat.hom_dim_ind(x, y);
            let mut columns = vec![Vec::new(); d];
            for m in cat.objects() {
                let probes = if ghost { ideal.component(m, x) } else { ideal.component(y, m) };
                for i in probes.basis() {
                    for (k, column) in columns.iter_mut().enumerate() {
                        let f = unit(field, d, k);
                        column.extend(if ghost {
                            cat.compose_coords(m, x, y, &f, i)
                        } else {
                            cat.compose_coords(x, y, m, i, &f)
                        });
                    }
                }
            }
            let rows = columns.first().map_or(0, Vec::len);
            let kernel = if rows == 0 {
                Subspace::full(field, d)
            } else {
                LinMap::from_columns(field, rows, &columns).expect("equal column lengths").kernel()
            };
            comps.push(kernel);
        }
    }
    Ideal::from_components(cat, comps).expect("annihilators are ideals")
}

/// `Hom(i, r) = 0` for all `i ∈ I`, `r ∈ R`, which by two-sided closure means `R ⊆ Gh_I`.
pub fn check_torsion_orthogonality(ideal: &Ideal, other: &Ideal) -> bool {
    other.is_subideal_of(&ghost_ideal(ideal))
}

/// Whether `I` is recovered from its ghost and coghost ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionIdentities {
    /// `I = CoGh(Gh(I))`.
    pub coghost_of_ghost: bool,
    /// `I = Gh(CoGh(I))`.
    pub ghost_of_coghost: bool,
}

pub fn torsion_identities(ideal: &Ideal) -> TorsionIdentities {
    TorsionIdentities {
        coghost_of_ghost: coghost_ideal(&ghost_ideal(ideal)) == *ideal,
        ghost_of_coghost: ghost_ideal(&coghost_ideal(ideal)) == *ideal,
    }
}
