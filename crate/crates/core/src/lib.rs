pub mod coeffs;
pub mod freealg;
pub mod qcoeff;
pub mod reducer;
pub mod repcheck;
pub mod verify;
