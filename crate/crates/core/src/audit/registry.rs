use super::checks::{self, Checked};
use super::checks::Check;

/// An executable identity.
pub struct Claim {
    pub id: &'static str,
    /// Label of the statement the claim encodes.
    pub paper_ref: &'static str,
    /// The identity in formula form.
    pub quote: &'static str,
    /// Run once per preset rather than once per genus.
    pub per_preset: bool,
    /// Needs the `P × P` model; subject to the product-genus budget.
    pub uses_product_space: bool,
    pub(crate) check: fn(&mut Check<'_>) -> Checked,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).finish()
    }
}

/// An audited statement and the claims that cover it.
#[derive(Debug)]
pub struct Statement {
    pub label: &'static str,
    pub claims: &'static [&'static str],
}

pub const STATEMENTS: &[Statement] = &[
    Statement { label: "Poincaré formula", claims: &["poincare-formula"] },
    Statement { label: "Pontryagin product on J", claims: &["pontryagin-J"] },
    Statement {
        label: "second grading on A(J)",
        claims: &["bigrading-J", "bigrading-support", "beauville-positive-weights"],
    },
    Statement { label: "Poincaré class", claims: &["poincare-class-J"] },
    Statement { label: "Fourier involution on J", claims: &["fourier-involution-J"] },
    Statement { label: "Fourier exchange on J", claims: &["fourier-exchange-J"] },
    Statement { label: "Fourier grading on J", claims: &["fourier-grading-J"] },
    Statement { label: "tautological ring of J", claims: &["thm-2.2-generation"] },
    Statement { label: "extension of multiplication by n to P", claims: &["ext-mult-extension"] },
    Statement { label: "eigenspaces on A(P)", claims: &["ext-eigenspace-span"] },
    Statement { label: "projective bundle formula", claims: &["pb-formula"] },
    Statement { label: "eigendecomposition on A(P)", claims: &["ext-eigendecomp"] },
    Statement { label: "blow-up resolution of m on P × P", claims: &["blowup-divisor-pullpush"] },
    Statement { label: "Pontryagin product on P", claims: &["pontryagin-degree-P"] },
    Statement { label: "Pontryagin compatibility on P", claims: &["pontryagin-compat-P"] },
    Statement { label: "cycle decomposition of extended W", claims: &["wtilde-decomposition"] },
    Statement { label: "extended theta class", claims: &["ext-theta-class"] },
    Statement { label: "extended Poincaré class", claims: &["ext-poincare-class"] },
    Statement { label: "extended Poincaré class simplification", claims: &["ext-poincare-class"] },
    Statement { label: "extended Fourier transform", claims: &["ext-fourier-definition"] },
    Statement {
        label: "extended Fourier properties",
        claims: &["ext-fourier-involution", "ext-fourier-exchange"],
    },
    Statement { label: "extended Fourier grading", claims: &["ext-fourier-grading"] },
    Statement { label: "tautological ring of P", claims: &["thm-4.1-generation"] },
];

const fn claim(
    id: &'static str,
    paper_ref: &'static str,
    quote: &'static str,
    per_preset: bool,
    uses_product_space: bool,
    check: fn(&mut Check<'_>) -> Checked,
) -> Claim {
    Claim { id, paper_ref, quote, per_preset, uses_product_space, check }
}

static CLAIMS: &[Claim] = &[
    claim(
        "poincare-formula",
        "Poincaré formula",
        "W_i = θ^{g-i}/(g-i)!, ∫ W_i·W_{g-i} = C(g,i)",
        false,
        false,
        checks::poincare_formula,
    ),
    claim(
        "pontryagin-J",
        "Pontryagin product on J",
        "x * y = m_*(p^*x · q^*y)",
        false,
        false,
        checks::pontryagin_j,
    ),
    claim(
        "bigrading-J",
        "second grading on A(J)",
        "A^p = ⊕_s A^p_(s) with n^* = n^{2p-s}, n_* = n^{2g-2p+s}; · and * are homogeneous",
        false,
        false,
        checks::bigrading_j,
    ),
    claim(
        "bigrading-support",
        "second grading on A(J)",
        "A^p_(s) ≠ 0 only if s < p ≤ g + s",
        false,
        false,
        checks::bigrading_support,
    ),
    claim(
        "beauville-positive-weights",
        "second grading on A(J)",
        "A^p_(s) for s > 0",
        false,
        false,
        checks::beauville_positive_weights,
    ),
    claim(
        "poincare-class-J",
        "Poincaré class",
        "ℓ = p^*θ + q^*θ - m^*θ",
        false,
        false,
        checks::poincare_class_j,
    ),
    claim(
        "fourier-involution-J",
        "Fourier involution on J",
        "F ∘ F = (-1)^g (-1)^*",
        false,
        false,
        checks::fourier_involution_j,
    ),
    claim(
        "fourier-exchange-J",
        "Fourier exchange on J",
        "F(x * y) = Fx · Fy, F(x · y) = (-1)^g Fx * Fy",
        false,
        false,
        checks::fourier_exchange_j,
    ),
    claim(
        "fourier-grading-J",
        "Fourier grading on J",
        "F A^p_(s) = A^{g-p+s}_(s)",
        false,
        false,
        checks::fourier_grading_j,
    ),
    claim(
        "thm-2.2-generation",
        "tautological ring of J",
        "R = Q<W_1, …, W_{g-1}> closed under ·, *, F, n^*, n_*",
        false,
        false,
        checks::thm_2_2_generation,
    ),
    claim(
        "ext-mult-extension",
        "extension of multiplication by n to P",
        "n: J → J extends to n: P → P, fibrewise a ↦ a^n",
        true,
        false,
        checks::ext_mult_extension,
    ),
    claim(
        "ext-eigenspace-span",
        "eigenspaces on A(P)",
        "A^k(P) = ⊕_s A^k(P)_(s) with n_* = n^{2g-2k+s}, n^* = n^{2k-s}",
        true,
        false,
        checks::ext_eigenspace_span,
    ),
    claim(
        "pb-formula",
        "projective bundle formula",
        "A^k(P) = A^k(J) ⊕ H·A^{k-1}(J), H = c_1(O_P(1))",
        false,
        false,
        checks::pb_formula,
    ),
    claim(
        "ext-eigendecomp",
        "eigendecomposition on A(P)",
        "A^k(P)_(s) = A^k(J)_(s) ⊕ H·A^{k-1}(J)_(s)",
        true,
        false,
        checks::ext_eigendecomp,
    ),
    claim(
        "blowup-divisor-pullpush",
        "blow-up resolution of m on P × P",
        "f_* m̃^* S_y = p^*S_y + q^*S_y, f_* m̃^* π^*D = (π×π)^* m^*D",
        false,
        true,
        checks::blowup_divisor_pullpush,
    ),
    claim(
        "pontryagin-compat-P",
        "Pontryagin compatibility on P",
        "m̃_* reduces to m'_* on A(J) ⊕ H·A(J)",
        true,
        false,
        checks::pontryagin_compat_p,
    ),
    claim(
        "pontryagin-degree-P",
        "Pontryagin product on P",
        "*: A^k(P) × A^l(P) → A^{k+l-g}(P)",
        true,
        false,
        checks::pontryagin_degree_p,
    ),
    claim(
        "wtilde-decomposition",
        "cycle decomposition of extended W",
        "W̃_{g-d} = π^*W_{g-d}·S_y + π^*W_{g-d-1}, W_{-1} = 0",
        false,
        false,
        checks::wtilde_decomposition,
    ),
    claim(
        "ext-theta-class",
        "extended theta class",
        "W̃_g = S_y + π^*W_{g-1}",
        false,
        false,
        checks::ext_theta_class,
    ),
    claim(
        "ext-poincare-class",
        "extended Poincaré class simplification",
        "ℓ̃ = p^*W̃_g + q^*W̃_g - f_* m̃^* W̃_g = (π×π)^*ℓ",
        false,
        true,
        checks::ext_poincare_class,
    ),
    claim(
        "ext-fourier-definition",
        "extended Fourier transform",
        "F̃x = q_*(p^*x · e^ℓ̃)",
        false,
        true,
        checks::ext_fourier_definition,
    ),
    claim(
        "ext-fourier-involution",
        "extended Fourier properties",
        "F̃ ∘ F̃ = (-1)^g (-1)^*",
        true,
        true,
        checks::ext_fourier_involution,
    ),
    claim(
        "ext-fourier-exchange",
        "extended Fourier properties",
        "F̃(x * y) = F̃x · F̃y, F̃(x · y) = (-1)^g F̃x * F̃y",
        true,
        true,
        checks::ext_fourier_exchange,
    ),
    claim(
        "ext-fourier-grading",
        "extended Fourier grading",
        "F̃ A^p(P)_(s) = A^{g-p+s}(P)_(s)",
        true,
        true,
        checks::ext_fourier_grading,
    ),
    claim(
        "thm-4.1-generation",
        "tautological ring of P",
        "R̃ = Q<π^*W_1, …, π^*W_{g-1}, S_y, H> closed under ·, *, F̃, n^*, n_*",
        true,
        true,
        checks::thm_4_1_generation,
    ),
];

/// All registered claims in report order.
pub fn claims() -> &'static [Claim] {
    CLAIMS
}

pub fn find_claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}
