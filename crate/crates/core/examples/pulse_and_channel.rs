//! Transmit pulse, CM2 channel draws and the resulting receive pulse.
//!
//! `cargo run --release --example pulse_and_channel`

use uwb_detect::waveform::{
    gaussian_monocycle, generate_channel, measure_spectrum, rms_delay_spread,
    synthesize_receive_pulse, ChannelModel, SvParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tx = gaussian_monocycle(2.25e9, 3.3e9, 20e9)?;
    let spec = measure_spectrum(&tx);
    println!(
        "monocycle: {} samples, peak {:.3} GHz, -10 dB band {:.3}-{:.3} GHz ({:.3} GHz)",
        tx.samples.len(),
        spec.peak_freq / 1e9,
        spec.lower_10db / 1e9,
        spec.upper_10db / 1e9,
        spec.bandwidth_10db / 1e9,
    );

    let model = ChannelModel::SalehValenzuela(SvParams::cm2());
    let ti_samples = (30e-9 * tx.sample_rate) as usize;
    println!("\nseed  taps  rms_ns  e_cap(30ns)");
    for seed in 0..8 {
        let ch = generate_channel(&model, seed)?;
        let (p, _) = synthesize_receive_pulse(&tx, &ch, 64e-9)?;
        println!(
            "{seed:>4}  {:>4}  {:>6.2}  {:.3}",
            ch.tap_delays.len(),
            rms_delay_spread(&ch) * 1e9,
            p.energy_within(ti_samples)
        );
    }
    Ok(())
}
