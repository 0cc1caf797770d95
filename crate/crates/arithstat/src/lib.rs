//! Desk-scale verification engine for class-group-average statistics:
//! 3-torsion of quadratic fields, cubic field and ring counts, explicit
//! limiting constants for D₄-type families with rigorous truncation
//! brackets, Cohen–Martinet predictions computed group-theoretically, and
//! comparison against ingested field tables.
//!
//! Start with the runnable programs under `examples/`; each demonstrates
//! one capability end to end. A thin `arithstat` binary exposes the same
//! capabilities as subcommands.

pub mod certified;
pub mod constants;
pub mod cubicforms;
pub mod lfunc;
pub mod orders;
pub mod wreath;
pub mod quadfield;

pub use certified::CertifiedReal;
pub use quadfield::FundamentalDiscriminant;
