//! Exact computations with root data under finite group actions.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod intlat;
pub mod linalg;
pub mod rootdata;
pub mod action;
pub mod folding;
pub mod bds;
pub mod induce;
pub mod coxfix;
pub mod formlab;
pub mod catalog;
pub mod checks;
