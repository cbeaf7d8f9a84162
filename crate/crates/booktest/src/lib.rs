//! Runs the code in the guide under `book/` as doc-tests. Each chapter gets
//! its own module so that a failing snippet points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/root-systems.md")]
pub mod root_systems {}
#[doc = include_str!("../../../book/src/coxeter.md")]
pub mod coxeter {}
#[doc = include_str!("../../../book/src/subword-complexes.md")]
pub mod subword_complexes {}
#[doc = include_str!("../../../book/src/seeds.md")]
pub mod seeds {}
#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}
#[doc = include_str!("../../../book/src/polytopes.md")]
pub mod polytopes {}
#[doc = include_str!("../../../book/src/type-a.md")]
pub mod type_a {}
#[doc = include_str!("../../../book/src/checks.md")]
pub mod checks {}
#[doc = include_str!("../../../book/src/json.md")]
pub mod json {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
