//! C ABI over the inrstego library.
//!
//! The surface follows the usual conventions for hand-rolled C bindings:
//! keys are opaque heap handles, every other buffer is allocated and owned
//! by the caller, and every fallible call returns an integer status. `0` is
//! success; the nonzero codes match the command-line tool's exit codes
//! (2 invalid input or key, 3 diverged training, 4 malformed data), with `5`
//! reserved for a caught internal panic. After a nonzero status,
//! [`inr_stego_last_error_message`] returns a thread-local description.
//!
//! The authoritative C declarations live in `include/inr_stego.h`, which is
//! maintained by hand next to this file; the `abi` test module keeps the two
//! in agreement on names and shapes as far as Rust can see them.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use inrstego::key::{KeyFile, Modality};
use inrstego::numeric::Matrix;
use inrstego::signals::{
    make_grid, pixel_to_unit, sample_to_unit, unit_to_pixel, unit_to_sample, Rgb8Image,
};
use inrstego::stego::{hide, reveal, TrainConfig};
use inrstego::Error;

pub const INR_STEGO_OK: c_int = 0;
pub const INR_STEGO_ERR_INVALID: c_int = 2;
pub const INR_STEGO_ERR_DIVERGED: c_int = 3;
pub const INR_STEGO_ERR_DATA: c_int = 4;
pub const INR_STEGO_ERR_INTERNAL: c_int = 5;

pub const INR_STEGO_MODALITY_VIDEO: c_int = 0;
pub const INR_STEGO_MODALITY_AUDIO: c_int = 1;
pub const INR_STEGO_MODALITY_IMAGE: c_int = 2;

/// Opaque key handle. Create with [`inr_stego_key_create`] or
/// [`inr_stego_key_from_json`], release with [`inr_stego_key_free`].
pub struct InrStegoKey(KeyFile);

/// Training knobs, mirroring the library defaults when obtained from
/// [`inr_stego_train_config_default`]. `use_qat` is a C boolean (0 = train
/// in float and quantize only at export).
#[repr(C)]
#[derive(Clone, Copy)]
pub struct InrStegoTrainConfig {
    pub steps: u64,
    pub batch_size: usize,
    pub learning_rate: f32,
    pub beta: f32,
    pub shuffle_seed: u64,
    pub use_qat: c_int,
}

/// End-of-run quality figures reported by [`inr_stego_hide`].
#[repr(C)]
#[derive(Clone, Copy, Default)]
pub struct InrStegoHideStats {
    pub secret_psnr_db: f64,
    pub cover_psnr_db: f64,
    pub cover_apd: f64,
    pub final_secret_loss: f64,
    pub final_cover_loss: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes were just removed");
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::default();
    });
}

fn status_of(err: &Error) -> c_int {
    err.exit_code()
}

/// Runs `body`, translating panics and errors into status codes and the
/// thread-local message slot.
fn guarded(body: impl FnOnce() -> Result<(), (c_int, String)>) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            INR_STEGO_OK
        }
        Ok(Err((code, message))) => {
            set_error(&message);
            code
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unidentified internal panic".into());
            set_error(&format!("internal panic: {message}"));
            INR_STEGO_ERR_INTERNAL
        }
    }
}

fn fail<T>(code: c_int, message: impl Into<String>) -> Result<T, (c_int, String)> {
    Err((code, message.into()))
}

fn lift<T>(result: Result<T, Error>) -> Result<T, (c_int, String)> {
    result.map_err(|e| (status_of(&e), e.to_string()))
}

/// Message for the most recent failing call on this thread. Never null;
/// empty after a success. The pointer is invalidated by the next call into
/// this library from the same thread.
#[no_mangle]
pub extern "C" fn inr_stego_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn inr_stego_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a key with the default architecture. `modality` is one of the
/// `INR_STEGO_MODALITY_*` constants; `dims` lists the secret's axes (slowest
/// first) and must match the modality's arity; `cover_side` is the square
/// container's side length. The new handle is written to `out`.
///
/// # Safety
/// `dims` must point to `dims_len` readable elements and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_create(
    modality: c_int,
    dims: *const usize,
    dims_len: usize,
    cover_side: usize,
    seed: u64,
    out: *mut *mut InrStegoKey,
) -> c_int {
    guarded(|| {
        if out.is_null() || dims.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let modality = match modality {
            INR_STEGO_MODALITY_VIDEO => Modality::Video,
            INR_STEGO_MODALITY_AUDIO => Modality::Audio,
            INR_STEGO_MODALITY_IMAGE => Modality::Image,
            other => return fail(INR_STEGO_ERR_INVALID, format!("unknown modality code {other}")),
        };
        let dims = std::slice::from_raw_parts(dims, dims_len);
        let key = KeyFile::for_modality(modality, dims, cover_side, seed);
        lift(key.validate())?;
        *out = Box::into_raw(Box::new(InrStegoKey(key)));
        Ok(())
    })
}

/// Parses and validates a key from a JSON string.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_from_json(
    json: *const c_char,
    out: *mut *mut InrStegoKey,
) -> c_int {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(_) => return fail(INR_STEGO_ERR_INVALID, "key JSON is not valid UTF-8"),
        };
        let key = lift(KeyFile::from_json(text))?;
        *out = Box::into_raw(Box::new(InrStegoKey(key)));
        Ok(())
    })
}

/// Serializes the key as pretty JSON. The string is owned by the library;
/// release it with [`inr_stego_string_free`].
///
/// # Safety
/// `key` must be a live handle from this library and `out` a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_to_json(
    key: *const InrStegoKey,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        if key.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let json = lift((*key).0.to_json_pretty())?;
        let owned = CString::new(json).expect("serde_json never emits NUL bytes");
        *out = owned.into_raw();
        Ok(())
    })
}

/// SHA-256 fingerprint of the key as lowercase hex. Release the string with
/// [`inr_stego_string_free`].
///
/// # Safety
/// `key` must be a live handle from this library and `out` a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_fingerprint(
    key: *const InrStegoKey,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        if key.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let hex = (*key).0.fingerprint();
        *out = CString::new(hex).expect("hex digits contain no NUL").into_raw();
        Ok(())
    })
}

/// Releases a key handle. Null is ignored.
///
/// # Safety
/// `key` must be null or a handle obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_free(key: *mut InrStegoKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Side length of the square cover/container the key expects; 0 on null.
///
/// # Safety
/// `key` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_cover_side(key: *const InrStegoKey) -> usize {
    if key.is_null() {
        return 0;
    }
    (*key).0.hidden_width
}

/// Number of coordinate rows in the secret (the product of its axes); 0 on
/// null. The sample buffers passed to hide/reveal hold this many rows.
///
/// # Safety
/// `key` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_sample_count(key: *const InrStegoKey) -> usize {
    if key.is_null() {
        return 0;
    }
    (*key).0.secret_dims.iter().product()
}

/// Values per sample row (3 for video and image, 1 for audio); 0 on null.
///
/// # Safety
/// `key` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_key_channel_count(key: *const InrStegoKey) -> usize {
    if key.is_null() {
        return 0;
    }
    (*key).0.output_dim
}

/// The library's training defaults.
#[no_mangle]
pub extern "C" fn inr_stego_train_config_default() -> InrStegoTrainConfig {
    let d = TrainConfig::default();
    InrStegoTrainConfig {
        steps: d.steps,
        batch_size: d.batch_size,
        learning_rate: d.learning_rate,
        beta: d.beta,
        shuffle_seed: d.shuffle_seed,
        use_qat: d.qat as c_int,
    }
}

/// Trains a container that carries the secret and writes its interleaved
/// RGB bytes to `out_container_rgb` (`3 * side * side` bytes, row-major).
/// `cover_rgb` has the same layout; `samples` holds the normalized secret,
/// `sample_count * channel_count` floats in row-major grid order. A null
/// `config` uses the defaults; a null `out_stats` skips the quality report.
///
/// # Safety
/// All non-null pointers must reference buffers of the sizes implied by the
/// key (use the `inr_stego_key_*` geometry calls).
#[no_mangle]
pub unsafe extern "C" fn inr_stego_hide(
    key: *const InrStegoKey,
    cover_rgb: *const u8,
    samples: *const f32,
    config: *const InrStegoTrainConfig,
    out_container_rgb: *mut u8,
    out_stats: *mut InrStegoHideStats,
) -> c_int {
    guarded(|| {
        if key.is_null() || cover_rgb.is_null() || samples.is_null() || out_container_rgb.is_null()
        {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let key = &(*key).0;
        let side = key.hidden_width;
        let pixel_bytes = 3 * side * side;
        let cover_slice = std::slice::from_raw_parts(cover_rgb, pixel_bytes);
        let cover = lift(Rgb8Image::from_raw(side, side, cover_slice.to_vec()))?;

        let rows: usize = key.secret_dims.iter().product();
        let cols = key.output_dim;
        let sample_slice = std::slice::from_raw_parts(samples, rows * cols);
        let samples = lift(Matrix::from_vec(rows, cols, sample_slice.to_vec()))?;
        let coords = make_grid(&key.secret_dims);

        let cfg = if config.is_null() {
            TrainConfig { log_every: 0, ..TrainConfig::default() }
        } else {
            let c = &*config;
            TrainConfig {
                steps: c.steps,
                batch_size: c.batch_size,
                learning_rate: c.learning_rate,
                beta: c.beta,
                shuffle_seed: c.shuffle_seed,
                qat: c.use_qat != 0,
                log_every: 0,
            }
        };

        let (container, report) = lift(hide(key, &cover, &coords, &samples, &cfg))?;
        std::slice::from_raw_parts_mut(out_container_rgb, pixel_bytes)
            .copy_from_slice(container.pixels());
        if !out_stats.is_null() {
            *out_stats = InrStegoHideStats {
                secret_psnr_db: report.secret_psnr_db,
                cover_psnr_db: report.cover_psnr_db,
                cover_apd: report.cover_apd,
                final_secret_loss: report.final_secret_loss,
                final_cover_loss: report.final_cover_loss,
            };
        }
        Ok(())
    })
}

/// Rebuilds the network carried by a container and evaluates it over the
/// secret's grid, writing `sample_count * channel_count` normalized floats.
///
/// # Safety
/// `container_rgb` must hold `3 * side * side` bytes and `out_samples` room
/// for the full sample matrix.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_reveal(
    key: *const InrStegoKey,
    container_rgb: *const u8,
    out_samples: *mut f32,
) -> c_int {
    guarded(|| {
        if key.is_null() || container_rgb.is_null() || out_samples.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let key = &(*key).0;
        let side = key.hidden_width;
        let slice = std::slice::from_raw_parts(container_rgb, 3 * side * side);
        let container = lift(Rgb8Image::from_raw(side, side, slice.to_vec()))?;
        let samples = lift(reveal(key, &container))?;
        std::slice::from_raw_parts_mut(out_samples, samples.data().len())
            .copy_from_slice(samples.data());
        Ok(())
    })
}

/// Converts 8-bit pixels to normalized samples (`2p/255 - 1`).
///
/// # Safety
/// Both pointers must reference `count` elements.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_pixels_to_samples(
    pixels: *const u8,
    count: usize,
    out: *mut f32,
) -> c_int {
    guarded(|| {
        if pixels.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let src = std::slice::from_raw_parts(pixels, count);
        let dst = std::slice::from_raw_parts_mut(out, count);
        for (d, &p) in dst.iter_mut().zip(src) {
            *d = pixel_to_unit(p);
        }
        Ok(())
    })
}

/// Converts normalized samples back to 8-bit pixels (round, then clamp).
///
/// # Safety
/// Both pointers must reference `count` elements.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_samples_to_pixels(
    samples: *const f32,
    count: usize,
    out: *mut u8,
) -> c_int {
    guarded(|| {
        if samples.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let src = std::slice::from_raw_parts(samples, count);
        let dst = std::slice::from_raw_parts_mut(out, count);
        for (d, &v) in dst.iter_mut().zip(src) {
            *d = unit_to_pixel(v);
        }
        Ok(())
    })
}

/// Converts signed 16-bit PCM to normalized samples (`s / 32768`).
///
/// # Safety
/// Both pointers must reference `count` elements.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_pcm16_to_samples(
    pcm: *const i16,
    count: usize,
    out: *mut f32,
) -> c_int {
    guarded(|| {
        if pcm.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let src = std::slice::from_raw_parts(pcm, count);
        let dst = std::slice::from_raw_parts_mut(out, count);
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = sample_to_unit(s);
        }
        Ok(())
    })
}

/// Converts normalized samples back to signed 16-bit PCM (round, then
/// clamp).
///
/// # Safety
/// Both pointers must reference `count` elements.
#[no_mangle]
pub unsafe extern "C" fn inr_stego_samples_to_pcm16(
    samples: *const f32,
    count: usize,
    out: *mut i16,
) -> c_int {
    guarded(|| {
        if samples.is_null() || out.is_null() {
            return fail(INR_STEGO_ERR_INVALID, "null pointer argument");
        }
        let src = std::slice::from_raw_parts(samples, count);
        let dst = std::slice::from_raw_parts_mut(out, count);
        for (d, &v) in dst.iter_mut().zip(src) {
            *d = unit_to_sample(v);
        }
        Ok(())
    })
}
