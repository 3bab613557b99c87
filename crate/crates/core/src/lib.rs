//! Graded strong monads on finite sets: law checking, graded centres,
//! duoidal relaxations and an effect-reordering analyzer.

pub mod centre;
pub mod effectlang;
pub mod finkit;
pub mod graded_monad;
pub mod pomonoid;
pub mod relaxations;
pub mod report;
