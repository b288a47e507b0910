use std::sync::Arc;

use cutset_core::dl::DlProvider;
use cutset_core::graph::{GraphProvider, HexLattice, RegularTree};
use cutset_core::group::{CayleyProvider, GeneratingSet, Group};

use crate::config::{Generators, ProviderSpec};

/// Families accepted in `provider.family`, with their parameters.
pub const FAMILIES: &[(&str, &str)] = &[
    ("cayley", "group = Z<d> | F<k> | lamplighter; generators = standard | king | lamplighter-dl | [words]"),
    ("hex", "hexagonal lattice (brick-wall embedding)"),
    ("tree", "degree = d; Cayley graph of the free product of d copies of Z2"),
    ("dl", "k, n >= 2; Diestel-Leader graph DL(k, n)"),
];

pub fn parse_group(text: &str) -> Result<Group, String> {
    let rank = |s: &str| s.parse::<usize>().ok().filter(|&d| d >= 1);
    if text.eq_ignore_ascii_case("lamplighter") {
        return Ok(Group::Lamplighter);
    }
    if let Some(d) = text.strip_prefix('Z').and_then(rank) {
        return Ok(Group::Abelian(d));
    }
    if let Some(k) = text.strip_prefix('F').and_then(rank) {
        return Ok(Group::Free(k));
    }
    Err(format!("unknown group {text:?} (expected Z<d>, F<k> or lamplighter)"))
}

pub fn generating_set(spec: &ProviderSpec) -> Result<GeneratingSet, String> {
    let group = parse_group(spec.group.as_deref().ok_or("cayley providers need a group")?)?;
    match &spec.generators {
        None => Ok(GeneratingSet::standard(group)),
        Some(Generators::Preset(p)) => match (p.as_str(), group) {
            ("standard", g) => Ok(GeneratingSet::standard(g)),
            ("king", Group::Abelian(2)) => Ok(GeneratingSet::king()),
            ("lamplighter-dl", Group::Lamplighter) => Ok(GeneratingSet::lamplighter_dl()),
            (other, g) => Err(format!("generator preset {other:?} is not available for {}", g.name())),
        },
        Some(Generators::Words(words)) => {
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            GeneratingSet::from_words(group, &refs).map_err(|e| e.to_string())
        }
    }
}

pub fn build(spec: &ProviderSpec) -> Result<Arc<dyn GraphProvider>, String> {
    let unused = |field: &str, present: bool| {
        if present {
            Err(format!("field {field} does not apply to family {}", spec.family))
        } else {
            Ok(())
        }
    };
    match spec.family.as_str() {
        "cayley" => {
            unused("degree", spec.degree.is_some())?;
            unused("k/n", spec.k.is_some() || spec.n.is_some())?;
            Ok(Arc::new(CayleyProvider::new(generating_set(spec)?)))
        }
        "hex" => {
            unused("group/generators", spec.group.is_some() || spec.generators.is_some())?;
            Ok(Arc::new(HexLattice))
        }
        "tree" => {
            let d = spec.degree.ok_or("tree providers need a degree")?;
            if d < 2 {
                return Err("tree degree must be at least 2".into());
            }
            let d = u8::try_from(d).map_err(|_| "tree degree must be below 256".to_string())?;
            Ok(Arc::new(RegularTree::new(d)))
        }
        "dl" => {
            let (k, n) = (spec.k.ok_or("dl providers need k")?, spec.n.ok_or("dl providers need n")?);
            Ok(Arc::new(DlProvider::new(k, n).map_err(|e| e.to_string())?))
        }
        other => Err(format!("unknown family {other:?}")),
    }
}

pub fn list_providers() -> String {
    let mut s = String::new();
    for (name, help) in FAMILIES {
        s.push_str(&format!("{name}\t{help}\n"));
    }
    s
}
