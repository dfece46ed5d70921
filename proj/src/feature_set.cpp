#include "cmfts/feature_set.hpp"

namespace cmfts {

const std::array<std::string_view, kFeatureCount>& feature_names() {
    static const std::array<std::string_view, kFeatureCount> names = {
        "C1_lempel_ziv",
        "C2_aproximation_entropy",
        "C3_sample_entropy",
        "C4_permutation_entropy",
        "C5_shannon_entropy_CS",
        "C6_shannon_entropy_SG",
        "C7_spectral_entropy",
        "C8_nforbiden",
        "C9_kurtosis",
        "C10_skewness",
        "C11_x_acf1",
        "C12_x_acf10",
        "C13_diff1_acf1",
        "C14_diff1_acf10",
        "C15_diff2_acf1",
        "C16_diff2_acf10",
        "C17_max_kl_shift",
        "C18_time_kl_shift",
        "C19_outlierinclude_mdrmd",
        "C20_max_level_shift",
        "C21_time_level_shift",
        "C22_ac_9",
        "C23_crossing_points",
        "C24_max_var_shift",
        "C25_time_var_shift",
        "C26_nonlinearity",
        "C27_embed2_incircle",
        "C28_spreadrandomlocal_meantaul",
        "C29_flat_spots",
        "C30_x_pacf5",
        "C31_diff1x_pacf5",
        "C32_diff2x_pacf5",
        "C33_firstmin_ac",
        "C34_std1st_der",
        "C35_stability",
        "C36_firstzero_ac",
        "C37_trev_num",
        "C38_alpha",
        "C39_beta",
        "C40_nperiods",
        "C41_seasonal_period",
        "C42_trend",
        "C43_spike",
        "C44_linearity",
        "C45_curvature",
        "C46_e_acf1",
        "C47_e_acf10",
        "C48_walker_propcross",
        "C49_hurst",
        "C50_unitroot_kpss",
        "C51_histogram_mode",
        "C52_unitroot_pp",
        "C53_localsimple_taures",
        "C54_lumpiness",
        "C55_motiftwo_entro3",
    };
    return names;
}

std::vector<double> extract_feature_vector(const TimeSeries& series, const FeatureParams& params) {
    const std::span<const double> xs(series.values());
    std::vector<double> out(kFeatureCount);

    out[0] = lempel_ziv(xs);
    out[1] = approximate_entropy(xs, params.complexity);
    out[2] = sample_entropy(xs, params.complexity);
    out[3] = permutation_entropy(xs, params.complexity);
    out[4] = shannon_entropy_cs(xs, params.complexity);
    out[5] = shannon_entropy_sg(xs, params.complexity);
    out[6] = spectral_entropy(xs);
    out[7] = forbidden_patterns(xs, params.complexity);
    out[8] = kurtosis(xs);
    out[9] = skewness(xs);

    const AcfFeatures af = acf_features(xs);
    out[10] = af.x_acf1;
    out[11] = af.x_acf10;
    out[12] = af.diff1_acf1;
    out[13] = af.diff1_acf10;
    out[14] = af.diff2_acf1;
    out[15] = af.diff2_acf10;
    out[21] = af.ac_9;

    const ShiftFeatures sf = shift_features(xs, params.window);
    out[16] = sf.max_kl_shift;
    out[17] = sf.time_kl_shift;
    out[19] = sf.max_level_shift;
    out[20] = sf.time_level_shift;
    out[23] = sf.max_var_shift;
    out[24] = sf.time_var_shift;

    out[18] = outlierinclude_mdrmd(xs);
    out[22] = crossing_points(xs);
    out[25] = nonlinearity(xs);
    out[26] = embed2_incircle(xs);
    out[27] = spreadrandomlocal_meantaul(xs, params.window);
    out[28] = flat_spots(xs);

    const PacfFeatures pf = pacf_features(xs);
    out[29] = pf.x_pacf5;
    out[30] = pf.diff1x_pacf5;
    out[31] = pf.diff2x_pacf5;

    const AcfTimings at = acf_timings(xs);
    out[32] = at.firstmin_ac;
    out[35] = at.firstzero_ac;

    out[33] = std1st_der(xs);

    const RollingMoments rm = rolling_moments(xs, params.window);
    out[34] = rm.stability;
    out[53] = rm.lumpiness;

    out[36] = trev_num(xs);

    const HoltParameters hp = holt_parameters(xs);
    out[37] = hp.alpha;
    out[38] = hp.beta;

    const SeasonalityMeta sm = seasonality_meta();
    out[39] = sm.nperiods;
    out[40] = sm.seasonal_period;

    const DecompositionFeatures df = decomposition_features(xs);
    out[41] = df.trend;
    out[42] = df.spike;
    out[43] = df.linearity;
    out[44] = df.curvature;
    out[45] = df.e_acf1;
    out[46] = df.e_acf10;

    out[47] = walker_propcross(xs, params.window);
    out[48] = hurst(xs);
    out[49] = unitroot_kpss(xs);
    out[50] = histogram_mode(xs);
    out[51] = unitroot_pp(xs);
    out[52] = localsimple_taures(xs, params.window);
    out[54] = motiftwo_entro3(xs);

    return out;
}

}  // namespace cmfts
