pub mod ring;

pub use ring::{e_union, present_cached, present_web, RingPres, SliceBasis, VarInfo, VarKind, WebLayout};
pub mod delta;
pub mod maps;
pub use maps::{realize, MapDesc, Step};
pub mod rewrite;
pub use rewrite::Rewriter;
