//! Exact arithmetic in Q(ξ_N) and modular arithmetic in F_p[X]/(X^N - 1).

mod field;
mod modular;
mod poly;

pub use field::{parse_rational, CycNumber};
pub use modular::{
    add_mod, bigint_mod, embed, embed_cyc, embed_rational, inv_mod, is_prime, mul_mod, pow_mod,
    sub_mod, EmbedMode, ModCycNumber, PrimeContext,
};
pub use poly::{cyclotomic_polynomial, euler_phi, level_data, LevelData};
