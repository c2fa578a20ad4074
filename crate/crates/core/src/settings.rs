/// Numerical tolerances and work limits shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    /// Equality tolerance for comparing radii, eigenvalues and `e^beta`.
    pub compare_tol: f64,
    /// Target width of the Collatz–Wielandt bracket, relative to `max(1, upper)`.
    pub bracket_tol: f64,
    /// Maximum eigen-residual accepted for a floating eigencone vertex.
    pub residual_tol: f64,
    /// Two floating vertices closer than this in sup norm are the same vertex.
    pub dedup_tol: f64,
    /// Power-iteration budget per irreducible component.
    pub max_iterations: usize,
    /// Largest vertex count for which eigencone vertices are enumerated.
    pub enumeration_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            compare_tol: 1e-9,
            bracket_tol: 1e-12,
            residual_tol: 1e-9,
            dedup_tol: 1e-8,
            max_iterations: 100_000,
            enumeration_cap: 20,
        }
    }
}
