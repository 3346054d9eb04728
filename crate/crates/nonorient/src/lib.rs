//! Mapping classes of closed non-orientable surfaces `N_g` as words in
//! Dehn twists and crosscap slides, evaluated through their outer action on
//! the surface group.

pub mod action;
pub mod catalog;
pub mod nec;
pub mod notation;
pub mod pi1;
pub mod words;
