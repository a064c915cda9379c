//! C ABI over `kemeny-core`.
//!
//! Every function returns a [`KemenyStatus`] and writes results through out
//! pointers. Objects are opaque heap handles released with the matching
//! `*_free` function. After a non-OK status, [`kemeny_last_error_message`]
//! describes the failure on the calling thread.
//!
//! Candidate ids are 0-based `size_t` values. Rankings are passed as arrays of
//! length `m`, best candidate first; a profile is `n` such arrays laid out
//! back to back.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kemeny_core::format::parse_profile;
use kemeny_core::mallows::{sample_profile, MallowsConfig};
use kemeny_core::{
    parameter_report, solve, Algorithm, Error, Lambda, Limits, Mode, Profile, Ranking,
    ScoredRanking, SolveRequest,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KemenyStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed text, or votes that are not permutations of one universe.
    InvalidInput = 2,
    /// An exponential routine would exceed its size limit.
    Resource = 3,
    InvalidArgument = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

pub const KEMENY_ALGORITHM_BRUTE: u32 = 0;
pub const KEMENY_ALGORITHM_BRANCH: u32 = 1;
pub const KEMENY_ALGORITHM_SUBSET_DP: u32 = 2;
pub const KEMENY_ALGORITHM_WINDOW_D: u32 = 3;
pub const KEMENY_ALGORITHM_WINDOW_RANGE: u32 = 4;
pub const KEMENY_ALGORITHM_PATHWIDTH_DP: u32 = 5;

/// All rankings of optimal score.
pub const KEMENY_MODE_OPT: u32 = 0;
/// Rankings of score at most `budget`.
pub const KEMENY_MODE_BUDGET: u32 = 1;
/// Rankings within `lambda_numer / lambda_denom` of the optimum.
pub const KEMENY_MODE_APPROX: u32 = 2;

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct KemenyMode {
    pub kind: u32,
    pub budget: u64,
    pub lambda_numer: u64,
    pub lambda_denom: u64,
}

/// Structural parameters. The average KT distance is the exact fraction
/// `avg_kt_numer / avg_kt_denom` in lowest terms.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct KemenyParameters {
    pub max_range: usize,
    pub avg_kt_numer: u64,
    pub avg_kt_denom: u64,
    pub unanimity_width: usize,
    pub blocking_size: usize,
    pub consensus_distance: usize,
}

/// Opaque profile handle.
pub struct KemenyProfile(Profile);

/// Opaque solver result handle.
pub struct KemenySolution {
    entries: Vec<ScoredRanking>,
    k_opt: Option<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

enum Failure {
    Null(&'static str),
    Arg(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> KemenyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            KemenyStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            KemenyStatus::NullPointer
        }
        Ok(Err(Failure::Arg(msg))) => {
            set_error(msg);
            KemenyStatus::InvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            match e {
                Error::Parse { .. } | Error::Structural(_) | Error::Io(_) => {
                    KemenyStatus::InvalidInput
                }
                Error::Resource { .. } => KemenyStatus::Resource,
                Error::Invalid(_) => KemenyStatus::InvalidArgument,
            }
        }
        Err(_) => {
            set_error("internal panic".into());
            KemenyStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn slice<'a>(p: *const usize, len: usize, what: &'static str) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn algorithm(code: u32) -> Result<Algorithm, Failure> {
    Ok(match code {
        KEMENY_ALGORITHM_BRUTE => Algorithm::Brute,
        KEMENY_ALGORITHM_BRANCH => Algorithm::Branch,
        KEMENY_ALGORITHM_SUBSET_DP => Algorithm::SubsetDp,
        KEMENY_ALGORITHM_WINDOW_D => Algorithm::WindowD,
        KEMENY_ALGORITHM_WINDOW_RANGE => Algorithm::WindowRange,
        KEMENY_ALGORITHM_PATHWIDTH_DP => Algorithm::PathwidthDp,
        other => return Err(Failure::Arg(format!("unknown algorithm code {other}"))),
    })
}

fn mode(m: &KemenyMode) -> Result<Mode, Failure> {
    Ok(match m.kind {
        KEMENY_MODE_OPT => Mode::Opt,
        KEMENY_MODE_BUDGET => Mode::Budget(m.budget),
        KEMENY_MODE_APPROX => Mode::Approx(Lambda::new(m.lambda_numer, m.lambda_denom)?),
        other => return Err(Failure::Arg(format!("unknown mode kind {other}"))),
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn kemeny_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a profile from `n` rankings of `m` candidates stored row by row.
///
/// # Safety
/// `votes` must point to `n * m` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_profile_from_votes(
    m: usize,
    n: usize,
    votes: *const usize,
    out_profile: *mut *mut KemenyProfile,
) -> KemenyStatus {
    guard(|| {
        let dst = out(out_profile, "out_profile")?;
        let len = m
            .checked_mul(n)
            .ok_or_else(|| Failure::Arg("m * n overflows".into()))?;
        let flat = slice(votes, len, "votes")?;
        let rankings = if m == 0 {
            vec![Ranking::identity(0); n]
        } else {
            flat.chunks(m)
                .map(|c| Ranking::new(c.to_vec()))
                .collect::<Result<Vec<_>, _>>()?
        };
        let p = Profile::new(m, rankings)?;
        *dst = Box::into_raw(Box::new(KemenyProfile(p)));
        Ok(())
    })
}

/// Parses a profile in the text file format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_profile_parse(
    text: *const c_char,
    out_profile: *mut *mut KemenyProfile,
) -> KemenyStatus {
    guard(|| {
        let dst = out(out_profile, "out_profile")?;
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure::Core(Error::parse(0, "input is not UTF-8")))?;
        *dst = Box::into_raw(Box::new(KemenyProfile(parse_profile(text)?)));
        Ok(())
    })
}

/// # Safety
/// `profile` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kemeny_profile_free(profile: *mut KemenyProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_profile_size(
    profile: *const KemenyProfile,
    out_m: *mut usize,
    out_n: *mut usize,
) -> KemenyStatus {
    guard(|| {
        let p = &deref(profile, "profile")?.0;
        *out(out_m, "out_m")? = p.m();
        *out(out_n, "out_n")? = p.n();
        Ok(())
    })
}

/// # Safety
/// `profile` must be a live handle and `out_params` writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_profile_parameters(
    profile: *const KemenyProfile,
    out_params: *mut KemenyParameters,
) -> KemenyStatus {
    guard(|| {
        let p = &deref(profile, "profile")?.0;
        let dst = out(out_params, "out_params")?;
        let rep = parameter_report(p, &Limits::default())?;
        let avg = rep.avg_kt.ratio();
        *dst = KemenyParameters {
            max_range: rep.max_range,
            avg_kt_numer: *avg.numer(),
            avg_kt_denom: *avg.denom(),
            unanimity_width: rep.unanimity_width,
            blocking_size: rep.blocking_size,
            consensus_distance: rep.consensus_distance,
        };
        Ok(())
    })
}

/// Kendall-Tau distance between two rankings of `m` candidates.
///
/// # Safety
/// `a` and `b` must point to `m` readable values and `out_distance` be writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_kt_distance(
    m: usize,
    a: *const usize,
    b: *const usize,
    out_distance: *mut u64,
) -> KemenyStatus {
    guard(|| {
        let dst = out(out_distance, "out_distance")?;
        let a = Ranking::new(slice(a, m, "a")?.to_vec())?;
        let b = Ranking::new(slice(b, m, "b")?.to_vec())?;
        *dst = kemeny_core::kt_distance(&a, &b)?;
        Ok(())
    })
}

/// Kemeny score of a ranking against a profile.
///
/// # Safety
/// `ranking` must point to `m` readable values, where `m` is the profile's
/// candidate count.
#[no_mangle]
pub unsafe extern "C" fn kemeny_score(
    profile: *const KemenyProfile,
    ranking: *const usize,
    out_score: *mut u64,
) -> KemenyStatus {
    guard(|| {
        let p = &deref(profile, "profile")?.0;
        let dst = out(out_score, "out_score")?;
        let q = Ranking::new(slice(ranking, p.m(), "ranking")?.to_vec())?;
        *dst = kemeny_core::kemeny_score(p, &q)?;
        Ok(())
    })
}

/// Returns up to `r` distinct rankings selected by `mode`, sorted by score
/// and then lexicographically.
///
/// # Safety
/// `profile` and `mode` must be valid and `out_solution` writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solve(
    profile: *const KemenyProfile,
    r: usize,
    mode_spec: *const KemenyMode,
    algorithm_code: u32,
    out_solution: *mut *mut KemenySolution,
) -> KemenyStatus {
    guard(|| {
        let p = &deref(profile, "profile")?.0;
        let mode = mode(deref(mode_spec, "mode")?)?;
        let dst = out(out_solution, "out_solution")?;
        let sol = solve(&SolveRequest::new(p, r, mode, algorithm(algorithm_code)?))?;
        *dst = Box::into_raw(Box::new(KemenySolution {
            entries: sol.rankings.into_entries(),
            k_opt: sol.k_opt,
        }));
        Ok(())
    })
}

/// # Safety
/// `solution` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solution_free(solution: *mut KemenySolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Number of rankings found; may be fewer than requested.
///
/// # Safety
/// `solution` must be a live handle and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solution_len(
    solution: *const KemenySolution,
    out_len: *mut usize,
) -> KemenyStatus {
    guard(|| {
        *out(out_len, "out_len")? = deref(solution, "solution")?.entries.len();
        Ok(())
    })
}

/// Optimal score, when the solver determined it. Writes `has_value = 0`
/// otherwise.
///
/// # Safety
/// `solution` must be a live handle and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solution_k_opt(
    solution: *const KemenySolution,
    out_has_value: *mut bool,
    out_k_opt: *mut u64,
) -> KemenyStatus {
    guard(|| {
        let k = deref(solution, "solution")?.k_opt;
        *out(out_has_value, "out_has_value")? = k.is_some();
        *out(out_k_opt, "out_k_opt")? = k.unwrap_or(0);
        Ok(())
    })
}

unsafe fn entry<'a>(solution: *const KemenySolution, index: usize) -> Result<&'a ScoredRanking, Failure> {
    let s = deref(solution, "solution")?;
    s.entries.get(index).ok_or_else(|| {
        Failure::Arg(format!("index {index} out of range for {} rankings", s.entries.len()))
    })
}

/// # Safety
/// `solution` must be a live handle and `out_score` writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solution_score(
    solution: *const KemenySolution,
    index: usize,
    out_score: *mut u64,
) -> KemenyStatus {
    guard(|| {
        *out(out_score, "out_score")? = entry(solution, index)?.score;
        Ok(())
    })
}

/// Copies ranking `index` into `buf`, which must hold at least `m` values.
///
/// # Safety
/// `solution` must be a live handle and `buf` writable for `buf_len` values.
#[no_mangle]
pub unsafe extern "C" fn kemeny_solution_ranking(
    solution: *const KemenySolution,
    index: usize,
    buf: *mut usize,
    buf_len: usize,
) -> KemenyStatus {
    guard(|| {
        let order = entry(solution, index)?.ranking.order();
        if buf_len < order.len() {
            return Err(Failure::Arg(format!(
                "buffer holds {buf_len} values, ranking has {}",
                order.len()
            )));
        }
        if !order.is_empty() {
            if buf.is_null() {
                return Err(Failure::Null("buf"));
            }
            ptr::copy_nonoverlapping(order.as_ptr(), buf, order.len());
        }
        Ok(())
    })
}

/// Samples `n` Mallows votes around the identity ranking with dispersion
/// `theta > 0`. Deterministic in `seed`.
///
/// # Safety
/// `out_profile` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kemeny_sample_profile(
    m: usize,
    n: usize,
    theta: f64,
    seed: u64,
    out_profile: *mut *mut KemenyProfile,
) -> KemenyStatus {
    guard(|| {
        let dst = out(out_profile, "out_profile")?;
        let cfg = MallowsConfig::identity(m, theta, seed)?;
        *dst = Box::into_raw(Box::new(KemenyProfile(sample_profile(&cfg, n)?)));
        Ok(())
    })
}
