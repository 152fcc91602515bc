use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock, RwLock};

use sha2::{Digest, Sha256};

use crate::kernel::{Field, MonomialOrder, Polynomial, Ring};

/// Persistent storage for Groebner bases, keyed by a hex content hash.
/// Values are the rendered basis elements.
pub trait CacheBackend: Send + Sync {
    fn load(&self, key: &str) -> Option<Vec<String>>;
    fn store(&self, key: &str, basis: &[String]);
}

static ENABLED: AtomicBool = AtomicBool::new(true);
static HITS: AtomicUsize = AtomicUsize::new(0);
static MEMORY: OnceLock<Mutex<HashMap<String, Vec<String>>>> = OnceLock::new();
static BACKEND: OnceLock<RwLock<Option<Box<dyn CacheBackend>>>> = OnceLock::new();

pub fn set_cache_enabled(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn cache_enabled() -> bool {
    ENABLED.load(Ordering::SeqCst)
}

/// Number of lookups answered from the cache so far.
pub fn cache_hits() -> usize {
    HITS.load(Ordering::SeqCst)
}

/// Installs (or removes) a persistent backend consulted after the
/// in-memory map.
pub fn set_cache_backend(backend: Option<Box<dyn CacheBackend>>) {
    let lock = BACKEND.get_or_init(|| RwLock::new(None));
    *lock.write().expect("cache backend lock") = backend;
}

pub fn clear_memory_cache() {
    if let Some(m) = MEMORY.get() {
        m.lock().expect("cache lock").clear();
    }
}

fn memory() -> &'static Mutex<HashMap<String, Vec<String>>> {
    MEMORY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn key<K: Field>(ring: &Ring<K>, order: MonomialOrder, gens: &[Polynomial<K>]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{:?}|{:?}|", ring.field().kind(), ring.names()).as_bytes());
    h.update(format!("{:?}|{:?}|{:?}|", ring.grading(), ring.weights(), order).as_bytes());
    let mut rendered: Vec<String> = gens.iter().map(|g| g.render()).collect();
    rendered.sort();
    for r in rendered {
        h.update(r.as_bytes());
        h.update(b";");
    }
    hex::encode(h.finalize())
}

pub(crate) fn lookup(key: &str) -> Option<Vec<String>> {
    if !cache_enabled() {
        return None;
    }
    if let Some(v) = memory().lock().expect("cache lock").get(key) {
        HITS.fetch_add(1, Ordering::SeqCst);
        return Some(v.clone());
    }
    let backend = BACKEND.get()?.read().expect("cache backend lock");
    let v = backend.as_ref()?.load(key)?;
    HITS.fetch_add(1, Ordering::SeqCst);
    memory().lock().expect("cache lock").insert(key.to_string(), v.clone());
    Some(v)
}

pub(crate) fn insert(key: &str, basis: Vec<String>) {
    if !cache_enabled() {
        return;
    }
    if let Some(lock) = BACKEND.get() {
        if let Some(b) = lock.read().expect("cache backend lock").as_ref() {
            b.store(key, &basis);
        }
    }
    memory().lock().expect("cache lock").insert(key.to_string(), basis);
}
