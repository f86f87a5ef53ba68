//! Reference answers computed straight from the input bits, with no network
//! in the loop. The exhaustive sweeps compare simulated decodes against
//! these.

use crate::engine::InputSequence;

/// Length of the maximal run of 1s starting at the first 1 (0 if the input
/// never spikes).
pub fn oracle_first_run_length(input: &InputSequence) -> u64 {
    let bits = input.bits();
    let Some(first) = bits.iter().position(|&b| b) else {
        return 0;
    };
    bits[first..].iter().take_while(|&&b| b).count() as u64
}

/// Total number of 1s in the input.
pub fn oracle_total_spikes(input: &InputSequence) -> u64 {
    input.bits().iter().filter(|&&b| b).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> InputSequence {
        InputSequence::parse(text).unwrap()
    }

    #[test]
    fn first_run_length_examples() {
        assert_eq!(oracle_first_run_length(&seq("00110")), 2);
        assert_eq!(oracle_first_run_length(&seq("00000")), 0);
        assert_eq!(oracle_first_run_length(&seq("10111")), 1);
        assert_eq!(oracle_first_run_length(&seq("1111111")), 7);
        assert_eq!(oracle_first_run_length(&seq("0111100")), 4);
        assert_eq!(oracle_first_run_length(&InputSequence::from_bits(vec![])), 0);
    }

    #[test]
    fn total_spikes_examples() {
        assert_eq!(oracle_total_spikes(&seq("101101")), 4);
        assert_eq!(oracle_total_spikes(&seq("000")), 0);
        assert_eq!(oracle_total_spikes(&seq("1111111")), 7);
        assert_eq!(oracle_total_spikes(&InputSequence::from_bits(vec![])), 0);
    }
}
