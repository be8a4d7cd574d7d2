pub mod intlin;
pub mod gmod;
pub mod extmodel;
pub mod ee;
pub mod defring;
pub mod cli;
