//! Strict reader and writer for 16-bit mono PCM WAV files.
//!
//! The reader walks the RIFF structure by hand and rejects anything it does
//! not fully understand, reporting the byte offset where validation failed.
//! Being strict here is deliberate: a revealed clip is only trustworthy if
//! the container format leaves no room for silent reinterpretation.

use crate::error::{Error, Result};
use std::path::Path;

/// A decoded mono clip: raw 16-bit samples plus their rate.
#[derive(Clone, Debug, PartialEq)]
pub struct WavClip {
    pub samples: Vec<i16>,
    pub sample_rate: u32,
}

fn read_u32(bytes: &[u8], offset: usize) -> Result<u32> {
    let end = offset + 4;
    if end > bytes.len() {
        return Err(Error::parse(offset, "file ends inside a 32-bit field"));
    }
    Ok(u32::from_le_bytes(bytes[offset..end].try_into().unwrap()))
}

fn read_u16(bytes: &[u8], offset: usize) -> Result<u16> {
    let end = offset + 2;
    if end > bytes.len() {
        return Err(Error::parse(offset, "file ends inside a 16-bit field"));
    }
    Ok(u16::from_le_bytes(bytes[offset..end].try_into().unwrap()))
}

/// Parses a WAV file from memory. Accepts exactly: RIFF/WAVE, a PCM `fmt `
/// chunk declaring one 16-bit channel, and a `data` chunk. Other chunk types
/// are skipped. Stereo, compressed, or non-16-bit files are rejected.
pub fn parse_wav(bytes: &[u8]) -> Result<WavClip> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" {
        return Err(Error::parse(0, "not a RIFF file (bad magic)"));
    }
    let riff_size = read_u32(bytes, 4)? as usize;
    if riff_size.checked_add(8) != Some(bytes.len()) {
        return Err(Error::parse(
            4,
            format!("RIFF size {riff_size} disagrees with file length {}", bytes.len()),
        ));
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(Error::parse(8, "RIFF form is not WAVE"));
    }

    let mut offset = 12usize;
    let mut format: Option<(u32, usize)> = None; // (sample_rate, fmt chunk offset)
    let mut data: Option<WavClip> = None;

    while offset < bytes.len() {
        if offset + 8 > bytes.len() {
            return Err(Error::parse(offset, "truncated chunk header"));
        }
        let id = &bytes[offset..offset + 4];
        let size = read_u32(bytes, offset + 4)? as usize;
        let body = offset + 8;
        if body + size > bytes.len() {
            return Err(Error::parse(
                offset,
                format!("chunk of {size} bytes overruns the file"),
            ));
        }
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(Error::parse(offset + 4, "fmt chunk shorter than 16 bytes"));
                }
                let audio_format = read_u16(bytes, body)?;
                if audio_format != 1 {
                    return Err(Error::parse(
                        body,
                        format!("audio format {audio_format} is not integer PCM"),
                    ));
                }
                let channels = read_u16(bytes, body + 2)?;
                if channels != 1 {
                    return Err(Error::parse(
                        body + 2,
                        format!("expected mono audio, found {channels} channels"),
                    ));
                }
                let sample_rate = read_u32(bytes, body + 4)?;
                if sample_rate == 0 {
                    return Err(Error::parse(body + 4, "sample rate is zero"));
                }
                let byte_rate = read_u32(bytes, body + 8)?;
                let block_align = read_u16(bytes, body + 12)?;
                let bits = read_u16(bytes, body + 14)?;
                if bits != 16 {
                    return Err(Error::parse(
                        body + 14,
                        format!("expected 16-bit samples, found {bits}"),
                    ));
                }
                if block_align != 2 {
                    return Err(Error::parse(
                        body + 12,
                        format!("block alignment {block_align} does not match mono 16-bit"),
                    ));
                }
                if byte_rate != sample_rate * 2 {
                    return Err(Error::parse(
                        body + 8,
                        format!("byte rate {byte_rate} does not match rate {sample_rate} x 2"),
                    ));
                }
                format = Some((sample_rate, offset));
            }
            b"data" => {
                let (sample_rate, _) = format.ok_or_else(|| {
                    Error::parse(offset, "data chunk appears before any fmt chunk")
                })?;
                if size % 2 != 0 {
                    return Err(Error::parse(
                        offset + 4,
                        format!("data chunk of {size} bytes cannot hold whole 16-bit samples"),
                    ));
                }
                let samples = bytes[body..body + size]
                    .chunks_exact(2)
                    .map(|pair| i16::from_le_bytes([pair[0], pair[1]]))
                    .collect();
                data = Some(WavClip { samples, sample_rate });
            }
            _ => {} // tolerated and skipped
        }
        // Chunk bodies are word-aligned: odd sizes carry one pad byte.
        offset = body + size + (size % 2);
    }

    data.ok_or_else(|| Error::parse(bytes.len(), "no data chunk found"))
}

/// Reads and parses a WAV file from disk.
pub fn load_wav(path: &Path) -> Result<WavClip> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_wav(&bytes)
}

/// Serializes a mono 16-bit clip in canonical layout: RIFF header, 16-byte
/// PCM fmt chunk, data chunk.
pub fn encode_wav(clip: &WavClip) -> Vec<u8> {
    let data_len = clip.samples.len() * 2;
    let riff_len = 4 + 8 + 16 + 8 + data_len;
    let mut out = Vec::with_capacity(riff_len + 8);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(riff_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // integer PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&clip.sample_rate.to_le_bytes());
    out.extend_from_slice(&(clip.sample_rate * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for s in &clip.samples {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}

/// Writes a clip to disk in the canonical layout.
pub fn save_wav(clip: &WavClip, path: &Path) -> Result<()> {
    std::fs::write(path, encode_wav(clip)).map_err(|e| Error::io(path, e))
}
