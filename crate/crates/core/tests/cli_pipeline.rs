//! Drives the installed binary end to end: generate a key, hide a secret,
//! reveal it, score it, and check that bad inputs exit with the documented
//! codes instead of stack traces.

mod common;

use std::collections::HashMap;
use std::path::Path;
use std::process::Output;

use inrstego::signals::{load_frame_dir, load_png, save_frame_dir, save_png};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_inrstego")
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(binary()).args(args).output().expect("binary spawns")
}

fn expect_success(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed with {:?}: {}",
        args,
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn expect_exit_code(args: &[&str], want: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(want),
        "command {:?} printed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Parses the `key=value` lines every subcommand prints.
fn parse_lines(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("temp paths are UTF-8")
}

#[test]
fn video_secret_survives_the_full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("key.json");
    let cover = dir.path().join("cover.png");
    let secret = dir.path().join("clip");
    let container = dir.path().join("container.png");
    let revealed = dir.path().join("revealed");
    let scores = dir.path().join("scores.txt");

    save_png(&common::cover_image(48), &cover).unwrap();
    save_frame_dir(&common::video_frames(3, 16, 16, 1.0), &secret).unwrap();

    let keygen_out = expect_success(&[
        "keygen",
        "--out",
        path_str(&key),
        "--modality",
        "video",
        "--secret-dims",
        "3x16x16",
        "--cover-side",
        "48",
        "--seed",
        "11",
    ]);
    let fingerprint = parse_lines(&keygen_out)["fingerprint"].clone();
    assert_eq!(fingerprint.len(), 64, "fingerprint is a full SHA-256 hex digest");

    let hide_out = expect_success(&[
        "hide",
        "--key",
        path_str(&key),
        "--cover",
        path_str(&cover),
        "--secret",
        path_str(&secret),
        "--out",
        path_str(&container),
        "--steps",
        "600",
    ]);
    let hide_lines = parse_lines(&hide_out);
    assert_eq!(hide_lines["steps"], "600");
    assert_eq!(hide_lines["key_fingerprint"], fingerprint);
    assert!(dir.path().join("container.png.report.txt").exists(), "report lands next to the container");

    let container_img = load_png(&container).unwrap();
    assert_eq!((container_img.width(), container_img.height()), (48, 48));

    expect_success(&[
        "reveal",
        "--key",
        path_str(&key),
        "--container",
        path_str(&container),
        "--out",
        path_str(&revealed),
    ]);
    let frames = load_frame_dir(&revealed).unwrap();
    assert_eq!(frames.len(), 3);
    assert_eq!((frames[0].width(), frames[0].height()), (16, 16));

    let eval_out = expect_success(&[
        "evaluate",
        "--key",
        path_str(&key),
        "--container",
        path_str(&container),
        "--secret",
        path_str(&secret),
        "--cover",
        path_str(&cover),
        "--out",
        path_str(&scores),
    ]);
    let scores_text = std::fs::read_to_string(&scores).unwrap();
    assert_eq!(eval_out, scores_text, "the score file mirrors stdout");
    let lines = parse_lines(&scores_text);
    assert_eq!(lines["fingerprint"], fingerprint);
    let secret_psnr: f64 = lines["secret_psnr_db"].parse().unwrap();
    let container_psnr: f64 = lines["container_psnr_db"].parse().unwrap();
    let secret_ssim: f64 = lines["secret_ssim"].parse().unwrap();
    assert!(secret_psnr > 13.0, "revealed clip should resemble the original, got {secret_psnr} dB");
    assert!(container_psnr > 12.0, "container should resemble the cover, got {container_psnr} dB");
    assert!(secret_ssim > 0.3 && secret_ssim <= 1.0, "got ssim {secret_ssim}");
}

#[test]
fn image_secret_survives_the_full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("key.json");
    let cover = dir.path().join("cover.png");
    let secret = dir.path().join("secret.png");
    let container = dir.path().join("container.png");
    let revealed = dir.path().join("revealed.png");

    save_png(&common::cover_image(48), &cover).unwrap();
    save_png(&common::video_frames(1, 24, 24, 1.0).remove(0), &secret).unwrap();

    expect_success(&[
        "keygen",
        "--out",
        path_str(&key),
        "--modality",
        "image",
        "--secret-dims",
        "24x24",
        "--cover-side",
        "48",
        "--seed",
        "21",
    ]);
    expect_success(&[
        "hide",
        "--key",
        path_str(&key),
        "--cover",
        path_str(&cover),
        "--secret",
        path_str(&secret),
        "--out",
        path_str(&container),
        "--steps",
        "600",
    ]);
    expect_success(&[
        "reveal",
        "--key",
        path_str(&key),
        "--container",
        path_str(&container),
        "--out",
        path_str(&revealed),
    ]);
    let img = load_png(&revealed).unwrap();
    assert_eq!((img.width(), img.height()), (24, 24));

    let eval_out = expect_success(&[
        "evaluate",
        "--key",
        path_str(&key),
        "--container",
        path_str(&container),
        "--secret",
        path_str(&secret),
        "--cover",
        path_str(&cover),
    ]);
    let lines = parse_lines(&eval_out);
    let secret_psnr: f64 = lines["secret_psnr_db"].parse().unwrap();
    assert!(secret_psnr > 13.0, "got {secret_psnr} dB");
}

#[test]
fn wrong_sized_inputs_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("key.json");
    let cover = dir.path().join("cover.png");
    let short_clip = dir.path().join("short");
    let container = dir.path().join("container.png");

    save_png(&common::cover_image(48), &cover).unwrap();
    save_frame_dir(&common::video_frames(2, 16, 16, 1.0), &short_clip).unwrap();
    expect_success(&[
        "keygen",
        "--out",
        path_str(&key),
        "--modality",
        "video",
        "--secret-dims",
        "3x16x16",
        "--cover-side",
        "48",
        "--seed",
        "11",
    ]);

    // Two frames where the key demands three.
    expect_exit_code(
        &[
            "hide",
            "--key",
            path_str(&key),
            "--cover",
            path_str(&cover),
            "--secret",
            path_str(&short_clip),
            "--out",
            path_str(&container),
            "--steps",
            "1",
        ],
        2,
    );

    // A container whose side disagrees with the key.
    let wrong = dir.path().join("wrong.png");
    save_png(&common::cover_image(32), &wrong).unwrap();
    expect_exit_code(
        &[
            "reveal",
            "--key",
            path_str(&key),
            "--container",
            path_str(&wrong),
            "--out",
            path_str(&dir.path().join("out")),
        ],
        2,
    );

    // A cover that does not match the container's size.
    expect_exit_code(
        &[
            "evaluate",
            "--key",
            path_str(&key),
            "--container",
            path_str(&cover),
            "--secret",
            path_str(&short_clip),
            "--cover",
            path_str(&wrong),
        ],
        2,
    );

    // Degenerate keygen requests.
    expect_exit_code(
        &[
            "keygen",
            "--out",
            path_str(&dir.path().join("bad.json")),
            "--modality",
            "video",
            "--secret-dims",
            "16x16",
            "--cover-side",
            "48",
            "--seed",
            "1",
        ],
        2,
    );
    expect_exit_code(
        &[
            "keygen",
            "--out",
            path_str(&dir.path().join("bad2.json")),
            "--modality",
            "audio",
            "--secret-dims",
            "0",
            "--cover-side",
            "48",
            "--seed",
            "1",
        ],
        2,
    );

    // Unreadable files map to the I/O code.
    expect_exit_code(
        &[
            "reveal",
            "--key",
            path_str(&key),
            "--container",
            path_str(&dir.path().join("absent.png")),
            "--out",
            path_str(&dir.path().join("out2")),
        ],
        4,
    );
}
