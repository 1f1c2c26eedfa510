//! HTTP GET with an optional on-disk cache.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{FetchSettings, IngestError};

const MAX_REDIRECTS: u32 = 5;

/// A fetched response body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fetched {
    pub body: Vec<u8>,
    pub content_type: Option<String>,
}

/// Cache file for `url` under `dir`: the hex SHA-256 of the URL.
pub fn cache_path(dir: &Path, url: &str) -> PathBuf {
    dir.join(format!("{}.cache", hex::encode(Sha256::digest(url.as_bytes()))))
}

pub(crate) fn get(url: &str, settings: &FetchSettings) -> Result<Fetched, IngestError> {
    let failed = |status: Option<u16>, reason: String| IngestError::FetchFailed {
        url: url.to_string(),
        status,
        reason,
    };
    let parsed = url::Url::parse(url).map_err(|e| failed(None, format!("invalid URL: {e}")))?;
    if !matches!(parsed.scheme(), "http" | "https") {
        return Err(failed(None, format!("unsupported scheme {:?}", parsed.scheme())));
    }

    if let Some(hit) = settings.cache_dir.as_deref().and_then(|d| read_cache(&cache_path(d, url))) {
        return Ok(hit);
    }
    if !settings.network {
        return Err(failed(None, "network access is disabled".into()));
    }

    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(settings.timeout))
        .max_redirects(MAX_REDIRECTS)
        .user_agent(settings.user_agent.as_str())
        .http_status_as_error(false)
        .build()
        .into();
    let mut response = agent.get(url).call().map_err(|e| failed(None, e.to_string()))?;
    let status = response.status().as_u16();
    if !(200..300).contains(&status) {
        return Err(failed(Some(status), "unexpected HTTP status".into()));
    }
    let content_type = response
        .headers()
        .get("content-type")
        .and_then(|v| v.to_str().ok())
        .map(str::to_string);
    let body = response
        .body_mut()
        .with_config()
        .limit(settings.max_bytes)
        .read_to_vec()
        .map_err(|e| failed(Some(status), e.to_string()))?;
    let fetched = Fetched { body, content_type };

    if let Some(dir) = settings.cache_dir.as_deref() {
        // A failed cache write only costs a refetch next time.
        let _ = write_cache(dir, &cache_path(dir, url), &fetched);
    }
    Ok(fetched)
}

fn read_cache(path: &Path) -> Option<Fetched> {
    let raw = std::fs::read(path).ok()?;
    let split = raw.iter().position(|&b| b == b'\n')?;
    let header = std::str::from_utf8(&raw[..split]).ok()?;
    Some(Fetched {
        content_type: (!header.is_empty()).then(|| header.to_string()),
        body: raw[split + 1..].to_vec(),
    })
}

/// Writes through a temporary file and renames, so readers never see a
/// partial entry and concurrent writers of the same URL do not interleave.
fn write_cache(dir: &Path, path: &Path, fetched: &Fetched) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    let header = fetched.content_type.as_deref().unwrap_or("").replace('\n', " ");
    tmp.write_all(header.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.write_all(&fetched.body)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
