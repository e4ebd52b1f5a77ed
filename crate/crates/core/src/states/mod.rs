//! Generators and zero-discord checks for three families of bipartite states.

pub mod isotropic;
pub mod werner;
pub mod xstate;

pub use isotropic::{
    isotropic_density, isotropic_diagonal_dominance_range, isotropic_discord_verdict, isotropic_graph,
    isotropic_graphical_range, IsotropicParams,
};
pub use werner::{werner_density, werner_discord_verdict, werner_graph, WernerParams};
pub use xstate::{is_xstate, xstate_graph, xstate_zero_discord, AntiDiagonalEdge, CrossBlock, DiagonalBlock, LoopWeight, XStateSpec};

use crate::error::{Error, Result};

fn check_dimension(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("subsystem dimension must be at least 2, got {d}")));
    }
    Ok(())
}

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {value}")));
    }
    Ok(())
}
