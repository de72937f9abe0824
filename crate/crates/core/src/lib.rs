pub mod approx;
pub mod bundle;
pub mod catcore;
pub mod exactla;
pub mod ghost;
pub mod ideals;
pub mod mutation;
pub mod quiverpres;
