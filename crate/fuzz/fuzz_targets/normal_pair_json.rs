#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::NormalPair;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(np) = NormalPair::from_json(s) {
        let json = np.to_json();
        let back = NormalPair::from_json(&json).expect("serialized pair reloads");
        assert_eq!(back.to_json(), json);
    }
});
