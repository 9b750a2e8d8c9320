//! Standard foldings used by the tests, the CLI and the named checks.

use serde::{Deserialize, Serialize};

use crate::action::{lift_diagram_permutation, named_action, stable_positive_system, ActionGroup};
use crate::folding::{coroot_lattice_check, restricted_systems, two_stage, CharacteristicRule, FoldError, RestrictedSystems, TwoStageResult};
use crate::rootdata::{named_datum, type_label, LatticeForm, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub datum: String,
    pub form: LatticeForm,
    pub action: String,
    /// The whole group acts in the second stage.
    pub galois: bool,
}

fn entry(datum: &str, form: LatticeForm, action: &str, galois: bool) -> CatalogEntry {
    let prefix = if form == LatticeForm::SimplyConnected { "sc:" } else { "" };
    let suffix = if galois { "/galois" } else { "" };
    CatalogEntry {
        name: format!("{prefix}{datum}/{action}{suffix}"),
        datum: datum.into(),
        form,
        action: action.into(),
        galois,
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    use LatticeForm::{Adjoint as Ad, SimplyConnected as Sc};
    vec![
        entry("A2", Ad, "swap", false),
        entry("A3", Ad, "swap", false),
        entry("A4", Ad, "swap", false),
        entry("A5", Ad, "swap", false),
        entry("A6", Ad, "swap", false),
        entry("D4", Ad, "swap", false),
        entry("D5", Ad, "swap", false),
        entry("D4", Ad, "triality", false),
        entry("D4", Ad, "s3", false),
        entry("E6", Ad, "flip", false),
        entry("A1xA1", Ad, "block-swap", false),
        entry("A2xA2", Ad, "block-swap", false),
        entry("A3xA3", Ad, "block-swap", false),
        entry("A2xA2xA2", Ad, "block-cycle", false),
        entry("A3", Ad, "trivial", false),
        entry("BC2", Ad, "trivial", false),
        entry("G2", Ad, "trivial", false),
        entry("A2", Sc, "swap", false),
        entry("A3", Sc, "swap", false),
        entry("A4", Sc, "swap", false),
        entry("D4", Sc, "triality", false),
        entry("E6", Sc, "flip", false),
        entry("A2", Ad, "swap", true),
        entry("A4", Ad, "swap", true),
    ]
}

impl CatalogEntry {
    pub fn root_datum(&self) -> RootDatum {
        named_datum(&self.datum, self.form).expect("catalog datum")
    }

    pub fn group(&self, d: &RootDatum) -> Result<ActionGroup, FoldError> {
        let g = named_action(d, &self.action)?;
        let geo = if self.galois { vec![g.identity] } else { (0..g.order()).collect() };
        Ok(g.with_geometric(&geo)?)
    }

    pub fn fold(&self) -> Result<(RootDatum, ActionGroup, TwoStageResult), FoldError> {
        let d = self.root_datum();
        let g = self.group(&d)?;
        let pos = stable_positive_system(&d, &g)?.ok_or(FoldError::NotStable)?;
        let t = two_stage(&d, &g, &pos)?;
        Ok((d, g, t))
    }
}

/// `A2 x A2` with the block swap as geometric part and the simultaneous
/// diagram swap of both blocks acting in the second stage.
pub fn two_stage_a2xa2() -> Result<(RootDatum, ActionGroup, TwoStageResult), FoldError> {
    let d = named_datum("A2xA2", LatticeForm::Adjoint)?;
    let simple = d.preferred_simple().expect("named product has a simple system").to_vec();
    let block = lift_diagram_permutation(&d, &simple, &[2, 3, 0, 1])?;
    let diag = lift_diagram_permutation(&d, &simple, &[1, 0, 3, 2])?;
    let g = crate::action::close_group(&d, &[block.clone(), diag])?;
    let b = g.find(&block.matrix).expect("generator is in its closure");
    let geo = g.subgroup_closure(&[b]);
    let g = g.with_geometric(&geo)?;
    let pos = stable_positive_system(&d, &g)?.ok_or(FoldError::NotStable)?;
    let t = two_stage(&d, &g, &pos)?;
    Ok((d, g, t))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub name: String,
    pub group_order: usize,
    pub quotient_type: String,
    pub quotient_rank: usize,
    pub coroot_lattice_identity: bool,
    pub restricted: Vec<RestrictedSystems>,
}

pub fn summarize(e: &CatalogEntry) -> Result<CatalogSummary, FoldError> {
    let (_, g, t) = e.fold()?;
    let restricted = [2, 3]
        .iter()
        .map(|&p| restricted_systems(&t, CharacteristicRule::new(p).unwrap()))
        .collect();
    Ok(CatalogSummary {
        name: e.name.clone(),
        group_order: g.order(),
        quotient_type: type_label(&t.total.quotient)?.to_string(),
        quotient_rank: t.total.quotient.rank(),
        coroot_lattice_identity: coroot_lattice_check(&t.total),
        restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_folds() {
        for e in catalog() {
            let s = summarize(&e).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(s.coroot_lattice_identity, "{}", e.name);
        }
    }

    #[test]
    fn klein_example() {
        let (_, g, t) = two_stage_a2xa2().unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(type_label(&t.total.quotient).unwrap().to_string(), "BC1");
        assert_eq!(type_label(&t.stage1.quotient).unwrap().to_string(), "A2");
    }
}
