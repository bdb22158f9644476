//! Command-line front end: key generation, hiding, revealing, and scoring.
//!
//! Every subcommand prints grep-friendly `key=value` lines on success and a
//! single `error: ...` line on stderr on failure. Exit codes follow
//! [`Error::exit_code`]: 2 for rejected arguments or keys, 3 for training
//! failures, 4 for I/O and data-format problems.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::key::{KeyFile, Modality};
use crate::metrics;
use crate::numeric::Matrix;
use crate::signals::{
    frames_to_samples, load_frame_dir, load_png, load_wav, make_grid, sample_to_unit,
    samples_to_frames, samples_to_image, save_frame_dir, save_png, save_wav, unit_to_sample,
    Rgb8Image, WavClip,
};
use crate::stego::{hide, reveal, TrainConfig};

#[derive(Parser)]
#[command(
    name = "inrstego",
    version,
    about = "Hide video, audio, or image signals inside the weights of a coordinate network \
             that ships as an ordinary PNG"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Create a key file describing the network, seed, and secret layout.
    Keygen(KeygenArgs),
    /// Train a container image that carries the secret.
    Hide(HideArgs),
    /// Reconstruct the secret from a container image.
    Reveal(RevealArgs),
    /// Score a container and its revealed secret against the originals.
    Evaluate(EvaluateArgs),
}

fn parse_modality(s: &str) -> std::result::Result<Modality, String> {
    match s {
        "video" => Ok(Modality::Video),
        "audio" => Ok(Modality::Audio),
        "image" => Ok(Modality::Image),
        other => Err(format!("unknown modality '{other}' (expected video, audio, or image)")),
    }
}

/// An `AxBxC`-style axis list, slowest axis first.
#[derive(Clone, Debug, PartialEq)]
struct DimList(Vec<usize>);

impl std::str::FromStr for DimList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let dims: std::result::Result<Vec<usize>, _> =
            s.split('x').map(|part| part.parse::<usize>()).collect();
        match dims {
            Ok(d) if !d.is_empty() && !d.contains(&0) => Ok(DimList(d)),
            _ => Err(format!("'{s}' is not a non-empty 'AxBxC'-style list of positive sizes")),
        }
    }
}

#[derive(Args)]
struct KeygenArgs {
    /// Where to write the key (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Kind of secret the key will carry: video, audio, or image.
    #[arg(long, value_parser = parse_modality)]
    modality: Modality,
    /// Secret size, slowest axis first: TxHxW for video, N for audio, HxW
    /// for image.
    #[arg(long)]
    secret_dims: DimList,
    /// Side length of the square cover/container image.
    #[arg(long)]
    cover_side: usize,
    /// Shared secret seed; the recipient needs the whole key file.
    #[arg(long)]
    seed: u64,
    /// Total weight layers in the network.
    #[arg(long)]
    num_layers: Option<usize>,
    /// First-layer frequency multiplier.
    #[arg(long)]
    omega0: Option<f32>,
    /// Carried-weight range as a fraction of the hidden init bound
    /// sqrt(6/N). Narrower ranges bind the quantization grid tighter.
    #[arg(long)]
    range_factor: Option<f32>,
}

#[derive(Args)]
struct HideArgs {
    /// Key file from `keygen`.
    #[arg(long)]
    key: PathBuf,
    /// Cover image (PNG) the container should resemble; its side must equal
    /// the key's hidden width.
    #[arg(long)]
    cover: PathBuf,
    /// The secret: a directory of PNG frames (video), a WAV file (audio), or
    /// a PNG (image). Sizes must match the key's secret dimensions.
    #[arg(long)]
    secret: PathBuf,
    /// Output container image (PNG).
    #[arg(long)]
    out: PathBuf,
    /// Training steps; defaults to 5000 (20000 for audio).
    #[arg(long)]
    steps: Option<u64>,
    /// Coordinates per minibatch.
    #[arg(long, default_value_t = 4096)]
    batch_size: usize,
    /// Adam learning rate.
    #[arg(long = "lr", default_value_t = 1e-3)]
    learning_rate: f32,
    /// Weight of the container-appearance loss.
    #[arg(long, default_value_t = 1.0)]
    beta: f32,
    /// Seed for the minibatch shuffle (not part of the shared key).
    #[arg(long, default_value_t = 1)]
    shuffle_seed: u64,
    /// Train in plain float and only quantize at export.
    #[arg(long)]
    no_qat: bool,
    /// Record a loss row every this many steps.
    #[arg(long, default_value_t = 100)]
    log_every: u64,
    /// Where to write the training report; defaults to `<out>.report.txt`.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct RevealArgs {
    /// Key file shared by the sender.
    #[arg(long)]
    key: PathBuf,
    /// Container image (PNG).
    #[arg(long)]
    container: PathBuf,
    /// Output: a directory (video), a WAV path (audio), or a PNG path
    /// (image).
    #[arg(long)]
    out: PathBuf,
    /// Sample rate stamped on revealed audio; the container does not carry
    /// one.
    #[arg(long, default_value_t = 22050)]
    sample_rate: u32,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Key file shared by the sender.
    #[arg(long)]
    key: PathBuf,
    /// Container image (PNG).
    #[arg(long)]
    container: PathBuf,
    /// The original secret, same form as `hide --secret`.
    #[arg(long)]
    secret: PathBuf,
    /// The original cover image (PNG).
    #[arg(long)]
    cover: PathBuf,
    /// Also write the scores to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` and runs the selected subcommand, returning the process
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Keygen(args) => keygen(args),
        Command::Hide(args) => run_hide(args),
        Command::Reveal(args) => run_reveal(args),
        Command::Evaluate(args) => evaluate(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn keygen(args: KeygenArgs) -> Result<()> {
    let mut key =
        KeyFile::for_modality(args.modality, &args.secret_dims.0, args.cover_side, args.seed);
    if let Some(n) = args.num_layers {
        key.num_layers = n;
    }
    if let Some(w) = args.omega0 {
        key.omega0 = w;
    }
    if let Some(factor) = args.range_factor {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "range factor must be positive and finite, got {factor}"
            )));
        }
        let bound = factor * (6.0 / args.cover_side as f32).sqrt();
        key.w_min = -bound;
        key.w_max = bound;
    }
    key.save(&args.out)?;
    println!("key={}", args.out.display());
    println!("fingerprint={}", key.fingerprint());
    Ok(())
}

/// Loads the secret named by a hide/evaluate path and converts it to the
/// training sample layout the key expects.
fn load_secret_samples(key: &KeyFile, path: &Path) -> Result<Matrix> {
    match key.modality {
        Modality::Video => {
            let frames = load_frame_dir(path)?;
            let got = [frames.len(), frames[0].height(), frames[0].width()];
            if got != key.secret_dims[..] {
                return Err(Error::InvalidArgument(format!(
                    "secret at {} is {} frames of {}x{} but the key expects {:?} \
                     (frames x height x width)",
                    path.display(),
                    got[0],
                    got[2],
                    got[1],
                    key.secret_dims
                )));
            }
            Ok(frames_to_samples(&frames))
        }
        Modality::Audio => {
            let clip = load_wav(path)?;
            if [clip.samples.len()] != key.secret_dims[..] {
                return Err(Error::InvalidArgument(format!(
                    "secret at {} holds {} samples but the key expects {:?}",
                    path.display(),
                    clip.samples.len(),
                    key.secret_dims
                )));
            }
            let data: Vec<f32> = clip.samples.iter().map(|&s| sample_to_unit(s)).collect();
            Ok(Matrix::from_vec(data.len(), 1, data).expect("one column per sample"))
        }
        Modality::Image => {
            let img = load_png(path)?;
            if [img.height(), img.width()] != key.secret_dims[..] {
                return Err(Error::InvalidArgument(format!(
                    "secret at {} is {}x{} but the key expects {:?} (height x width)",
                    path.display(),
                    img.width(),
                    img.height(),
                    key.secret_dims
                )));
            }
            Ok(img.to_samples())
        }
    }
}

fn run_hide(args: HideArgs) -> Result<()> {
    let key = KeyFile::load(&args.key)?;
    let cover = load_png(&args.cover)?;
    let samples = load_secret_samples(&key, &args.secret)?;
    let coords = make_grid(&key.secret_dims);
    let cfg = TrainConfig {
        steps: args.steps.unwrap_or(match key.modality {
            Modality::Audio => 20_000,
            _ => 5_000,
        }),
        batch_size: args.batch_size,
        learning_rate: args.learning_rate,
        beta: args.beta,
        shuffle_seed: args.shuffle_seed,
        qat: !args.no_qat,
        log_every: args.log_every,
    };
    let (container, report) = hide(&key, &cover, &coords, &samples, &cfg)?;
    save_png(&container, &args.out)?;
    let report_path = args
        .report
        .unwrap_or_else(|| PathBuf::from(format!("{}.report.txt", args.out.display())));
    let text = report.to_key_values();
    std::fs::write(&report_path, &text).map_err(|e| Error::io(&report_path, e))?;
    println!("container={}", args.out.display());
    println!("report={}", report_path.display());
    for line in text.lines().filter(|l| !l.starts_with("history=")) {
        println!("{line}");
    }
    Ok(())
}

fn run_reveal(args: RevealArgs) -> Result<()> {
    let key = KeyFile::load(&args.key)?;
    let container = load_png(&args.container)?;
    let samples = reveal(&key, &container)?;
    match key.modality {
        Modality::Video => {
            let [t, h, w] = key.secret_dims[..] else {
                unreachable!("validated video keys have three axes")
            };
            let frames = samples_to_frames(&samples, t, w, h)?;
            save_frame_dir(&frames, &args.out)?;
        }
        Modality::Audio => {
            let clip = WavClip {
                samples: samples.data().iter().map(|&v| unit_to_sample(v)).collect(),
                sample_rate: args.sample_rate,
            };
            save_wav(&clip, &args.out)?;
        }
        Modality::Image => {
            let [h, w] = key.secret_dims[..] else {
                unreachable!("validated image keys have two axes")
            };
            save_png(&samples_to_image(&samples, w, h)?, &args.out)?;
        }
    }
    println!("secret={}", args.out.display());
    Ok(())
}

fn pixels_of(frames: &[Rgb8Image]) -> Vec<u8> {
    frames.iter().flat_map(|f| f.pixels().iter().copied()).collect()
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let key = KeyFile::load(&args.key)?;
    let container = load_png(&args.container)?;
    let cover = load_png(&args.cover)?;
    if cover.width() != container.width() || cover.height() != container.height() {
        return Err(Error::InvalidArgument(format!(
            "cover is {}x{} but the container is {}x{}",
            cover.width(),
            cover.height(),
            container.width(),
            container.height()
        )));
    }
    let revealed = reveal(&key, &container)?;

    let mut lines: Vec<String> = vec![format!("fingerprint={}", key.fingerprint())];
    match key.modality {
        Modality::Video => {
            let original = load_frame_dir(&args.secret)?;
            let [t, h, w] = key.secret_dims[..] else {
                unreachable!("validated video keys have three axes")
            };
            if original.len() != t || original[0].height() != h || original[0].width() != w {
                return Err(Error::InvalidArgument(format!(
                    "original at {} does not match the key's {:?} layout",
                    args.secret.display(),
                    key.secret_dims
                )));
            }
            let recon = samples_to_frames(&revealed, t, w, h)?;
            let (a, b) = (pixels_of(&original), pixels_of(&recon));
            lines.push(format!("secret_psnr_db={:.4}", metrics::psnr(&a, &b)));
            lines.push(format!("secret_apd={:.4}", metrics::apd(&a, &b)));
            lines.push(format!("secret_ssim={:.6}", metrics::ssim_frames(&original, &recon)?));
        }
        Modality::Audio => {
            let original = load_wav(&args.secret)?;
            if [original.samples.len()] != key.secret_dims[..] {
                return Err(Error::InvalidArgument(format!(
                    "original at {} does not match the key's {:?} layout",
                    args.secret.display(),
                    key.secret_dims
                )));
            }
            let recon: Vec<i16> =
                revealed.data().iter().map(|&v| unit_to_sample(v)).collect();
            let a: Vec<f64> = original.samples.iter().map(|&s| s as f64).collect();
            let b: Vec<f64> = recon.iter().map(|&s| s as f64).collect();
            lines.push(format!("secret_snr_db={:.4}", metrics::snr(&a, &b)));
            lines.push(format!("secret_ae={:.4}", metrics::ae(&original.samples, &recon)));
        }
        Modality::Image => {
            let original = load_png(&args.secret)?;
            let [h, w] = key.secret_dims[..] else {
                unreachable!("validated image keys have two axes")
            };
            if original.height() != h || original.width() != w {
                return Err(Error::InvalidArgument(format!(
                    "original at {} does not match the key's {:?} layout",
                    args.secret.display(),
                    key.secret_dims
                )));
            }
            let recon = samples_to_image(&revealed, w, h)?;
            lines.push(format!(
                "secret_psnr_db={:.4}",
                metrics::psnr(original.pixels(), recon.pixels())
            ));
            lines.push(format!(
                "secret_apd={:.4}",
                metrics::apd(original.pixels(), recon.pixels())
            ));
            lines.push(format!("secret_ssim={:.6}", metrics::ssim(&original, &recon)?));
        }
    }

    lines.push(format!(
        "container_psnr_db={:.4}",
        metrics::psnr(cover.pixels(), container.pixels())
    ));
    lines.push(format!("container_apd={:.4}", metrics::apd(cover.pixels(), container.pixels())));
    lines.push(format!("container_ssim={:.6}", metrics::ssim(&cover, &container)?));

    let text = lines.join("\n") + "\n";
    print!("{text}");
    if let Some(out) = args.out {
        std::fs::write(&out, &text).map_err(|e| Error::io(&out, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parser_accepts_axis_lists_and_rejects_garbage() {
        let parse = |s: &str| s.parse::<DimList>();
        assert_eq!(parse("4x32x32").unwrap(), DimList(vec![4, 32, 32]));
        assert_eq!(parse("2048").unwrap(), DimList(vec![2048]));
        assert!(parse("").is_err());
        assert!(parse("4x0x4").is_err());
        assert!(parse("4xx4").is_err());
        assert!(parse("axb").is_err());
    }

    #[test]
    fn modality_parser_covers_the_three_kinds() {
        assert_eq!(parse_modality("video").unwrap(), Modality::Video);
        assert_eq!(parse_modality("audio").unwrap(), Modality::Audio);
        assert_eq!(parse_modality("image").unwrap(), Modality::Image);
        assert!(parse_modality("Video").is_err());
        assert!(parse_modality("text").is_err());
    }

    #[test]
    fn bad_usage_exits_with_code_two() {
        assert_eq!(run(["inrstego", "keygen"]), 2, "missing required arguments");
        assert_eq!(run(["inrstego", "no-such-command"]), 2);
    }

    #[test]
    fn help_exits_cleanly() {
        assert_eq!(run(["inrstego", "--help"]), 0);
        assert_eq!(run(["inrstego", "keygen", "--help"]), 0);
    }

    #[test]
    fn missing_key_file_maps_to_io_exit_code() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope.json");
        let out = dir.path().join("c.png");
        let code = run([
            "inrstego",
            "hide",
            "--key",
            missing.to_str().unwrap(),
            "--cover",
            "also-missing.png",
            "--secret",
            "irrelevant",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 4, "a key file that cannot be read is an I/O failure");
    }

    #[test]
    fn corrupt_key_file_maps_to_key_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\"not\": \"a key\"}").unwrap();
        let out = dir.path().join("c.png");
        let code = run([
            "inrstego",
            "hide",
            "--key",
            path.to_str().unwrap(),
            "--cover",
            "also-missing.png",
            "--secret",
            "irrelevant",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 2, "a structurally invalid key is a key rejection");
    }
}
