//! Behavioral properties of the trade-off knob: the appearance weight must
//! actually steer the secret/cover balance, monotonically on the cover side.

mod common;

use inrstego::key::{KeyFile, Modality};
use inrstego::report::TrainReport;
use inrstego::signals::{make_grid, Rgb8Image};
use inrstego::stego::{hide, TrainConfig};

fn run_with_beta(beta: f32) -> TrainReport {
    let secret: Rgb8Image = common::video_frames(1, 16, 16, 1.0).remove(0);
    let cover = common::cover_image(32);
    let key = KeyFile::for_modality(Modality::Image, &[16, 16], 32, 13);
    let coords = make_grid(&[16, 16]);
    let cfg = TrainConfig { steps: 400, batch_size: 256, beta, ..TrainConfig::default() };
    let (_, report) = hide(&key, &cover, &coords, &secret.to_samples(), &cfg).unwrap();
    report
}

#[test]
fn appearance_weight_steers_the_tradeoff() {
    let soft = run_with_beta(0.1);
    let balanced = run_with_beta(1.0);
    let strict = run_with_beta(10.0);

    assert!(
        soft.cover_apd > balanced.cover_apd && balanced.cover_apd > strict.cover_apd,
        "container drift must shrink as the appearance weight grows: \
         {:.3} (0.1) vs {:.3} (1) vs {:.3} (10)",
        soft.cover_apd,
        balanced.cover_apd,
        strict.cover_apd
    );
    assert!(
        soft.final_secret_loss < strict.final_secret_loss,
        "a lax appearance budget must buy a better secret fit: {:.3e} (0.1) vs {:.3e} (10)",
        soft.final_secret_loss,
        strict.final_secret_loss
    );
}

#[test]
fn history_cadence_matches_the_configured_interval() {
    let secret: Rgb8Image = common::video_frames(1, 16, 16, 1.0).remove(0);
    let cover = common::cover_image(32);
    let key = KeyFile::for_modality(Modality::Image, &[16, 16], 32, 13);
    let coords = make_grid(&[16, 16]);

    let cfg = TrainConfig { steps: 130, batch_size: 256, log_every: 50, ..TrainConfig::default() };
    let (_, report) = hide(&key, &cover, &coords, &secret.to_samples(), &cfg).unwrap();
    let steps: Vec<u64> = report.history.iter().map(|r| r.step).collect();
    assert_eq!(steps, vec![50, 100, 130], "cadence rows plus the final step");

    let cfg = TrainConfig { steps: 60, batch_size: 256, log_every: 0, ..TrainConfig::default() };
    let (_, report) = hide(&key, &cover, &coords, &secret.to_samples(), &cfg).unwrap();
    let steps: Vec<u64> = report.history.iter().map(|r| r.step).collect();
    assert_eq!(steps, vec![60], "cadence 0 keeps only the final step");
}
