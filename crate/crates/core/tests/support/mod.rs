#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use cutset_core::dl::DlProvider;
use cutset_core::graph::{GraphProvider, GraphWindow, HexLattice, WindowLimits};
use cutset_core::group::{CayleyProvider, GeneratingSet, Group};

pub fn square() -> Arc<dyn GraphProvider> {
    Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(2))))
}

pub fn line() -> Arc<dyn GraphProvider> {
    Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(1))))
}

pub fn hex() -> Arc<dyn GraphProvider> {
    Arc::new(HexLattice)
}

pub fn lamplighter() -> Arc<dyn GraphProvider> {
    Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Lamplighter)))
}

pub fn dl22() -> Arc<dyn GraphProvider> {
    Arc::new(DlProvider::new(2, 2).unwrap())
}

pub fn window(p: Arc<dyn GraphProvider>, r: u32) -> GraphWindow {
    GraphWindow::build(p, r, WindowLimits::default()).unwrap()
}
