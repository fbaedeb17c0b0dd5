pub mod doc;
pub mod hypertree;
pub mod matching;
pub mod normal;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod spectra;
pub mod tensor;
