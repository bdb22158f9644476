//! Hides a one-dimensional audio clip and checks the reconstruction is
//! listenable (SNR well above the intelligibility floor), including the
//! WAV-emitting reveal path of the binary.

mod common;

use inrstego::key::{KeyFile, Modality};
use inrstego::metrics;
use inrstego::numeric::Matrix;
use inrstego::signals::{load_wav, make_grid, sample_to_unit, save_png, unit_to_sample};
use inrstego::stego::{hide, reveal, TrainConfig};

fn snr_i16(reference: &[i16], estimate: &[i16]) -> f64 {
    let a: Vec<f64> = reference.iter().map(|&s| s as f64).collect();
    let b: Vec<f64> = estimate.iter().map(|&s| s as f64).collect();
    metrics::snr(&a, &b)
}

#[test]
fn audio_clip_survives_hiding_with_usable_fidelity() {
    let original = common::audio_samples(2048);
    let cover = common::cover_image(64);
    let key = KeyFile::for_modality(Modality::Audio, &[2048], 64, 5);

    let data: Vec<f32> = original.iter().map(|&s| sample_to_unit(s)).collect();
    let samples = Matrix::from_vec(2048, 1, data).unwrap();
    let coords = make_grid(&[2048]);
    let cfg = TrainConfig { steps: 1500, batch_size: 2048, ..TrainConfig::default() };
    let (container, report) = hide(&key, &cover, &coords, &samples, &cfg).unwrap();
    assert!(report.cover_psnr_db > 12.0, "container strayed: {} dB", report.cover_psnr_db);

    // Library-level reveal.
    let revealed = reveal(&key, &container).unwrap();
    let recon: Vec<i16> = revealed.data().iter().map(|&v| unit_to_sample(v)).collect();
    let snr = snr_i16(&original, &recon);
    assert!(snr >= 15.0, "reconstruction too noisy: {snr:.2} dB SNR (needs 15)");

    // Binary-level reveal writes a playable WAV with the requested rate.
    let dir = tempfile::tempdir().unwrap();
    let key_path = dir.path().join("key.json");
    let container_path = dir.path().join("container.png");
    let wav_path = dir.path().join("revealed.wav");
    key.save(&key_path).unwrap();
    save_png(&container, &container_path).unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_inrstego"))
        .args([
            "reveal",
            "--key",
            key_path.to_str().unwrap(),
            "--container",
            container_path.to_str().unwrap(),
            "--out",
            wav_path.to_str().unwrap(),
            "--sample-rate",
            "8000",
        ])
        .output()
        .expect("binary spawns");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let clip = load_wav(&wav_path).unwrap();
    assert_eq!(clip.sample_rate, 8000);
    assert_eq!(clip.samples.len(), 2048);
    let cli_snr = snr_i16(&original, &clip.samples);
    assert!(
        (cli_snr - snr).abs() < 1e-9,
        "binary reveal ({cli_snr:.4} dB) disagrees with library reveal ({snr:.4} dB)"
    );
}
