#include "qsl2r/io.hpp"

namespace qsl2r {

ojson matrix_entries(const Mat& A) {
    ojson out = ojson::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        for (Eigen::Index c = 0; c < A.cols(); ++c)
            if (A(r, c) != cplx(0.0))
                out.push_back({r, c, A(r, c).real(), A(r, c).imag()});
    return out;
}

ojson module_json(const TruncatedModule& m, const ojson& config) {
    ojson j;
    j["family"] = family_name(m.family);
    j["q"] = m.base.q;
    j["t"] = m.base.t;
    j["epsilon"] = m.epsilon;
    j["lambda"] = {m.lambda.real(), m.lambda.imag()};
    if (m.order)
        j["order"] = {{"sigma", m.order->sigma}, {"n", m.order->n}, {"sign", m.order->sign}};
    else
        j["order"] = nullptr;
    j["window"] = m.window;
    j["weights"] = m.weights;
    ojson mats;
    mats["theta"] = matrix_entries(m.theta);
    mats["X"] = matrix_entries(m.X);
    mats["Z"] = matrix_entries(m.Z);
    mats["Xstar"] = matrix_entries(m.Xstar);
    j["matrices"] = mats;
    if (!config.is_null()) j["config"] = config;
    return j;
}

std::string module_to_json(const TruncatedModule& m, const ojson& config) {
    return module_json(m, config).dump(2);
}

}  // namespace qsl2r
