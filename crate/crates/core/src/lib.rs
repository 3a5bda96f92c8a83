//! Exact computation of Φ on primitive small-variation necklaces, the Markov
//! tree, and the simple length spectrum of the modular torus.
//!
//! Φ is evaluated three independent ways: literal enumeration of subsets
//! ([`phi::phi_literal`]), a product of transfer matrices over ℤ[√5]
//! ([`phi::phi_transfer`]), and the trace of an `L/R` word in SL(2,ℤ)
//! divided by 3 ([`phi::phi_oracle`]). The scans in [`spectrum`] compare the
//! image of Φ with the Markov numbers produced by [`markov`].
//!
//! ```
//! use markov_phi::{necklace::Necklace, phi};
//!
//! let n: Necklace = "[2,1]".parse().unwrap();
//! assert_eq!(phi::phi(&n).unwrap().to_string(), "29");
//! ```

#![allow(clippy::result_large_err)]

pub mod markov;
pub mod mat2;
pub mod necklace;
pub mod par;
pub mod phi;
pub mod quadring;
pub mod slword;
pub mod spectrum;

pub use markov::MarkovTriple;
pub use mat2::Mat2;
pub use necklace::{Necklace, NecklaceParams};
pub use par::Exec;
pub use phi::{Evaluator, PhiConfig, PhiResult};
pub use quadring::QuadInt;
pub use slword::LRWord;
pub use spectrum::{ScanConfig, SpectrumEntry};
