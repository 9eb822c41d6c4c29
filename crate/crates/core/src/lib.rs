//! Construction and exhaustive verification of Z-complementary code sets
//! (ZCCS) and complete complementary codes (CCC) built from generalized
//! Boolean functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`gbf`]: generalized Boolean functions and their phase sequences.
//! - [`graph`]: quadratic-form graphs and the deletion-path check.
//! - [`construct`]: the binary truncated family (`lemma1_ccc`,
//!   `theorem1_zccs`, `theorem3_zccs`) and the q-ary family
//!   (`lemma2_ccc`, `theorem2_zccs`).
//! - [`correlate`]: exact aperiodic correlation and zone verification.
//! - [`oracle`]: regeneration of a code set through an independent path.
//! - [`io`]: the JSON code-set file, CSV export and correlation reports.
//!
//! ```
//! use zccs::construct::{quadratic_form, theorem3_zccs, Lemma1Params};
//! use zccs::correlate::verify_zccs;
//!
//! let q = quadratic_form(1, 2, &[]).unwrap();
//! let params = Lemma1Params::new(5, q, vec![1], 0, vec![], 0);
//! let set = theorem3_zccs(&params).unwrap();
//! let report = verify_zccs(&set, set.dims().z).unwrap();
//! assert!(report.zccs_ok && report.optimal);
//! ```

pub mod codeset;
pub mod construct;
pub mod correlate;
pub mod error;
pub mod gbf;
pub mod graph;
pub mod io;
pub mod oracle;

pub use codeset::{Code, CodeSet, Dimensions, Provenance};
pub use error::{Error, Result};
pub use gbf::{BitOrder, Gbf, Literal, PhaseSequence};
