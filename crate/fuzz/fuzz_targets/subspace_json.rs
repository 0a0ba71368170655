#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::Subspace;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = serde_json::from_slice::<Subspace>(data) {
        assert!(s.dim() <= s.ambient_dim());
        let json = serde_json::to_vec(&s).unwrap();
        assert_eq!(serde_json::from_slice::<Subspace>(&json).unwrap(), s);
    }
});
