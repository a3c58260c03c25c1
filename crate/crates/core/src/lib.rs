//! Generalized Markowitz preferences over finite portfolio domains.
//!
//! Two families of objectives, `u` (maximized) and `v` (minimized), induce
//! a preorder `R(u, v)` on portfolios: `xRy` when every `u_p` weakly
//! increases and every `v_q` weakly decreases from `x` to `y`. With the
//! expected return as the only `u` and the variance as the only `v`, the
//! maximal elements of `R` are exactly the Markowitz-efficient portfolios.
//! Other families add higher moments (squared skewness, squared excess
//! kurtosis) or stochastic-dominance curves.
//!
//! The crate works on finite candidate sets:
//!
//! * [`market`]: scenario markets, return distributions, moments, CDFs and
//!   iterated CDF integrals, stochastic-dominance comparison.
//! * [`preorder`]: objective families, pairwise verdicts, maximal sets,
//!   dominator ascent, chain analytics.
//! * [`domain`]: simplex and short-sales ball grids, seeded sampling and
//!   named objective presets.
//! * [`kernel`]: preorders induced by a bivariate function on a finite set.
//! * [`cli`]: the `genmark` command-line front end and its file formats.
//!
//! ```
//! use std::sync::Arc;
//! use genmark::domain::{build_preorder, simplex_grid, ObjectiveConfig, Preset};
//! use genmark::market::ScenarioMarket;
//!
//! let market = ScenarioMarket::new(
//!     vec![0.5, 0.5],
//!     vec![vec![1.0, 1.0], vec![0.0, 4.0], vec![0.0, 2.0]],
//! )?;
//! let candidates = simplex_grid(3, 1)?;
//! let preorder = build_preorder(&ObjectiveConfig::preset(Preset::Markowitz), Arc::new(market), None)?;
//! let frontier = preorder.maximal_set(&candidates)?;
//! assert_eq!(frontier.maximal_indices, vec![0, 1]);
//! assert_eq!(frontier.dominators[2], Some(0));
//! # Ok::<(), genmark::Error>(())
//! ```

pub mod cli;
pub mod domain;
mod error;
pub mod kernel;
pub mod market;
pub mod preorder;

pub use error::{Error, Result};
