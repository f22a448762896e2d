//! The Frobenius algebras `R[X]/(X^2 - hX - t)` for each theory, their
//! tensor powers, involutions, the ν operators, duality and base changes.

mod base_change;
mod dual;
mod identities;
mod involution;
mod nu;
mod tensor;
mod theory;

pub use base_change::{base_change, BaseChange, ARROWS};
pub use dual::{
    counit_functional, delta_star, dual_involution, dualize, epsilon_star, iota_star, m_star, DualElement,
    DualTensor,
};
pub use identities::{identity_suite, random_poly, random_tensor, IdentityResult};
pub use involution::{involution, Involution, InvolutionKind};
pub use nu::{nu_bar, nu_data, nu_hat, nu_hat_scalar, nu_k};
pub use tensor::{
    comultiply, counit, counit_at, merge, mul_factor, multiply, pairing, split, unit, unit_at, AlgebraElement,
    Labels, TensorVector, MAX_FACTORS,
};
pub use theory::{Theory, TheoryKey, TheoryKind};

pub(crate) use tensor::{bit, insert_bit, remove_bit};
