#include "exwb/photonics.hpp"

#include "exwb/round.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exwb {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kZeroAmp = 1e-12;  // amplitudes at or below this count as absent

double deg2rad(double deg) { return deg * kPi / 180.0; }

// Plate angles are pi-periodic; canonical range [0, 180).
double normalize_angle(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0.0)
        a += 180.0;
    if (a >= 180.0)
        a = 0.0;
    return a;
}

int oam_slot(int m) {
    for (std::size_t k = 0; k < kOamRegister.size(); ++k)
        if (kOamRegister[k] == m)
            return static_cast<int>(k);
    return -1;
}

PhotonState apply_pol_matrix(const PhotonState& s, const Eigen::Matrix2cd& m) {
    PhotonState out = s;
    for (int slot = 0; slot < 3; ++slot) {
        const Complex h = s.amp[0][static_cast<std::size_t>(slot)];
        const Complex v = s.amp[1][static_cast<std::size_t>(slot)];
        out.amp[0][static_cast<std::size_t>(slot)] = m(0, 0) * h + m(0, 1) * v;
        out.amp[1][static_cast<std::size_t>(slot)] = m(1, 0) * h + m(1, 1) * v;
    }
    return out;
}

// Projection onto the unit polarization vector `dir` across all OAM slots.
PhotonState project_pol(const PhotonState& s, const Eigen::Vector2cd& dir, const char* what) {
    PhotonState out;
    double weight = 0.0;
    for (int slot = 0; slot < 3; ++slot) {
        const Complex a = std::conj(dir(0)) * s.amp[0][static_cast<std::size_t>(slot)] +
                          std::conj(dir(1)) * s.amp[1][static_cast<std::size_t>(slot)];
        out.amp[0][static_cast<std::size_t>(slot)] = a * dir(0);
        out.amp[1][static_cast<std::size_t>(slot)] = a * dir(1);
        weight += std::norm(a);
    }
    if (weight <= kZeroAmp * kZeroAmp)
        throw std::runtime_error(std::string(what) + ": empty output port");
    const double inv = 1.0 / std::sqrt(weight);
    for (auto& row : out.amp)
        for (auto& a : row)
            a *= inv;
    out.postselection_probability = s.postselection_probability * weight;
    return out;
}

double weight_at_slot(const PhotonState& s, int slot) {
    return std::norm(s.amp[0][static_cast<std::size_t>(slot)]) +
           std::norm(s.amp[1][static_cast<std::size_t>(slot)]);
}

}  // namespace

PhotonState PhotonState::basis(Pol pol, int oam) {
    const int slot = oam_slot(oam);
    if (slot < 0)
        throw std::invalid_argument("PhotonState: OAM " + std::to_string(oam) +
                                    " outside the register {-2, 0, +2}");
    PhotonState s;
    s.amp[pol == Pol::H ? 0 : 1][static_cast<std::size_t>(slot)] = 1.0;
    return s;
}

double PhotonState::norm2() const {
    double t = 0.0;
    for (const auto& row : amp)
        for (const auto& a : row)
            t += std::norm(a);
    return t;
}

Eigen::Matrix2cd hwp_matrix(double angle_deg) {
    const double t = 2.0 * deg2rad(angle_deg);
    Eigen::Matrix2cd m;
    m << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
    return m;
}

Eigen::Matrix2cd qwp_matrix(double angle_deg) {
    const double t = deg2rad(angle_deg);
    const double c = std::cos(t), s = std::sin(t);
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << c * c + i * s * s, c * s * (1.0 - i), c * s * (1.0 - i), s * s + i * c * c;
    return m;
}

PhotonState apply_waveplate(const PhotonState& s, WaveplateKind kind, double angle_deg) {
    return apply_pol_matrix(
        s, kind == WaveplateKind::half ? hwp_matrix(angle_deg) : qwp_matrix(angle_deg));
}

PhotonState apply_qplate(const PhotonState& s, double q) {
    const double two_q = 2.0 * q;
    const int shift = static_cast<int>(std::lround(two_q));
    if (std::abs(two_q - shift) > 1e-9)
        throw std::invalid_argument("qplate: q must be a half-integer");
    const Complex i(0.0, 1.0);
    PhotonState out;
    out.postselection_probability = s.postselection_probability;
    for (int slot = 0; slot < 3; ++slot) {
        if (weight_at_slot(s, slot) <= kZeroAmp * kZeroAmp)
            continue;
        const int m = kOamRegister[static_cast<std::size_t>(slot)];
        const Complex h = s.amp[0][static_cast<std::size_t>(slot)];
        const Complex v = s.amp[1][static_cast<std::size_t>(slot)];
        const Complex a_left = (h - i * v) * kInvSqrt2;   // <L| component
        const Complex a_right = (h + i * v) * kInvSqrt2;  // <R| component
        const struct {
            Complex a;
            int target_m;
            bool to_right;
        } pieces[2] = {{a_left, m + shift, true}, {a_right, m - shift, false}};
        for (const auto& piece : pieces) {
            if (std::norm(piece.a) <= kZeroAmp * kZeroAmp)
                continue;
            const int tslot = oam_slot(piece.target_m);
            if (tslot < 0)
                throw std::runtime_error("qplate: OAM register overflow (m = " +
                                         std::to_string(piece.target_m) + ")");
            const Complex vcomp = piece.to_right ? -i : i;
            out.amp[0][static_cast<std::size_t>(tslot)] += piece.a * kInvSqrt2;
            out.amp[1][static_cast<std::size_t>(tslot)] += piece.a * vcomp * kInvSqrt2;
        }
    }
    return out;
}

PhotonState apply_pbs(const PhotonState& s, PbsPort port) {
    const Eigen::Vector2cd dir =
        port == PbsPort::transmit_H ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    return project_pol(s, dir, "pbs");
}

PhotonState apply_polarizer(const PhotonState& s, double angle_deg) {
    const double t = deg2rad(angle_deg);
    return project_pol(s, Eigen::Vector2cd(std::cos(t), std::sin(t)), "polarizer");
}

PhotonState apply_transfer_pi_to_o2(const PhotonState& s) {
    if (weight_at_slot(s, 0) + weight_at_slot(s, 2) > kZeroAmp * kZeroAmp)
        throw std::runtime_error("transfer pi->o2: input must carry OAM 0 only");
    return apply_pbs(apply_qplate(s, 1.0), PbsPort::transmit_H);
}

PhotonState apply_transfer_o2_to_pi(const PhotonState& s) {
    if (weight_at_slot(s, 1) > kZeroAmp * kZeroAmp)
        throw std::runtime_error("transfer o2->pi: residual OAM-0 amplitude");
    Eigen::Matrix2cd m;  // rows H,V; columns +2,-2
    m << s.amp[0][2], s.amp[0][0], s.amp[1][2], s.amp[1][0];
    if (std::abs(m.determinant()) > 1e-9)
        throw std::runtime_error("transfer o2->pi: polarization-OAM entangled input");
    const double rh = m.row(0).squaredNorm();
    const double rv = m.row(1).squaredNorm();
    // rank-1 state: either row is proportional to the OAM qubit
    Eigen::Vector2cd o = (rh >= rv ? m.row(0) : m.row(1)).transpose();
    o.normalize();
    PhotonState out;
    out.postselection_probability = s.postselection_probability;
    out.amp[0][1] = o(0);  // +2 amplitude -> |H,0>
    out.amp[1][1] = o(1);  // -2 amplitude -> |V,0>
    return out;
}

PhotonState apply_element(const PhotonState& s, const OpticalElement& e) {
    switch (e.kind) {
    case OpticalElement::Kind::hwp:
        return apply_waveplate(s, WaveplateKind::half, e.angle_deg);
    case OpticalElement::Kind::qwp:
        return apply_waveplate(s, WaveplateKind::quarter, e.angle_deg);
    case OpticalElement::Kind::qplate:
        return apply_qplate(s, e.q);
    case OpticalElement::Kind::pbs:
        return apply_pbs(s, e.port);
    case OpticalElement::Kind::polarizer:
        return apply_polarizer(s, e.angle_deg);
    case OpticalElement::Kind::transfer_pi_to_o2:
        return apply_transfer_pi_to_o2(s);
    case OpticalElement::Kind::transfer_o2_to_pi:
        return apply_transfer_o2_to_pi(s);
    }
    throw std::logic_error("apply_element: unknown element kind");
}

PreparedQuquart prepare_state(const SetupDescriptor& setup) {
    PhotonState s = PhotonState::basis(setup.input_pol, setup.input_oam);
    for (const auto& e : setup.elements)
        s = apply_element(s, e);
    if (weight_at_slot(s, 1) > kZeroAmp * kZeroAmp)
        throw std::runtime_error("prepare_state: residual OAM-0 amplitude (incomplete transfer)");
    PreparedQuquart out;
    out.amplitudes = {s.amp[0][2], s.amp[0][0], s.amp[1][2], s.amp[1][0]};
    out.success_probability = s.postselection_probability;
    return out;
}

double analyze_projection(const Ququart& state, const Ququart& analyzer) {
    double ns = 0.0, na = 0.0;
    Complex ip = 0.0;
    for (int k = 0; k < 4; ++k) {
        ns += std::norm(state[static_cast<std::size_t>(k)]);
        na += std::norm(analyzer[static_cast<std::size_t>(k)]);
        ip += std::conj(analyzer[static_cast<std::size_t>(k)]) * state[static_cast<std::size_t>(k)];
    }
    if (na <= kZeroAmp * kZeroAmp)
        throw std::invalid_argument("analyze_projection: zero analyzer");
    if (ns <= kZeroAmp * kZeroAmp)
        throw std::invalid_argument("analyze_projection: zero state");
    return std::norm(ip) / (ns * na);
}

PlatePair pol_prep_plates(const Eigen::Vector2cd& target) {
    Eigen::Vector2cd chi = target;
    const double n = chi.norm();
    if (n <= kZeroAmp)
        throw std::invalid_argument("pol_prep_plates: zero target");
    chi /= n;
    const Complex h = chi(0), v = chi(1);
    // The QWP axis bisects the target's linear Stokes components; in the QWP
    // frame the state is then (cos u, i sin u) up to phase, and the HWP turns
    // |H> into the linear polarization at beta + u.
    const double s1 = std::norm(h) - std::norm(v);
    const double s2 = 2.0 * std::real(std::conj(h) * v);
    const double beta = 0.5 * std::atan2(s2, s1);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const Complex x = cb * h + sb * v;
    const Complex y = -sb * h + cb * v;
    double u;
    if (std::abs(x) <= kZeroAmp)
        u = kPi / 2.0;
    else
        u = std::atan(std::real(Complex(0.0, -1.0) * y / x));
    const double alpha = 0.5 * (beta + u);
    PlatePair plates;
    plates.hwp_deg = normalize_angle(alpha * 180.0 / kPi);
    plates.qwp_deg = normalize_angle(beta * 180.0 / kPi);
    const Eigen::Vector2cd produced =
        qwp_matrix(plates.qwp_deg) * hwp_matrix(plates.hwp_deg) * Eigen::Vector2cd(1.0, 0.0);
    if (std::norm(produced.dot(chi)) < 1.0 - 1e-9)
        throw std::logic_error("pol_prep_plates: synthesis self-check failed");
    return plates;
}

QhqAngles decompose_pol_unitary(const Eigen::Matrix2cd& u) {
    if (!(u * u.adjoint()).isApprox(Eigen::Matrix2cd::Identity(), 1e-9))
        throw std::invalid_argument("decompose_pol_unitary: matrix is not unitary");
    const Complex i(0.0, 1.0);
    const Complex det = u.determinant();
    const Eigen::Matrix2cd v = u * std::exp(-i * (0.5 * std::arg(det)));
    Eigen::Matrix2cd circ;  // columns |R>, |L> in H/V components
    circ << Complex(kInvSqrt2), Complex(kInvSqrt2), -i * kInvSqrt2, i * kInvSqrt2;
    const Eigen::Matrix2cd vc = circ.adjoint() * v * circ;
    // vc = [[m, n], [-conj(n), conj(m)]]; in the circular basis the QHQ
    // product has m = cos(P - B') e^{iM}, n = sin(P - B') e^{iP} with
    // A' = 2a = P + M, B' = 2b, C' = 2c = P - M.
    const Complex m = vc(0, 0), n = vc(0, 1);
    const double w = std::atan2(std::abs(n), std::abs(m));
    const double big_m = std::arg(m);
    const double big_p = std::arg(n);
    QhqAngles angles;
    angles.qwp_first_deg = normalize_angle(0.5 * (big_p - big_m) * 180.0 / kPi);
    angles.hwp_deg = normalize_angle(0.5 * (big_p - w) * 180.0 / kPi);
    angles.qwp_last_deg = normalize_angle(0.5 * (big_p + big_m) * 180.0 / kPi);
    const Eigen::Matrix2cd produced =
        qwp_matrix(angles.qwp_last_deg) * hwp_matrix(angles.hwp_deg) * qwp_matrix(angles.qwp_first_deg);
    if (std::abs((u.adjoint() * produced).trace()) < 2.0 - 1e-6)
        throw std::logic_error("decompose_pol_unitary: QHQ self-check failed");
    return angles;
}

SetupDescriptor design_preparation(const Ququart& target) {
    Eigen::Vector4cd t;
    for (int k = 0; k < 4; ++k)
        t(k) = target[static_cast<std::size_t>(k)];
    const double tn = t.norm();
    if (tn <= kZeroAmp)
        throw std::invalid_argument("design_preparation: zero target");
    t /= tn;
    Eigen::Matrix2cd m;  // rows H,V; columns +2,-2
    m << t(0), t(1), t(2), t(3);

    const Complex i(0.0, 1.0);
    const auto hwp = [](double deg) {
        OpticalElement e;
        e.kind = OpticalElement::Kind::hwp;
        e.angle_deg = deg;
        return e;
    };
    const auto qwp = [](double deg) {
        OpticalElement e;
        e.kind = OpticalElement::Kind::qwp;
        e.angle_deg = deg;
        return e;
    };
    const auto qplate1 = [] {
        OpticalElement e;
        e.kind = OpticalElement::Kind::qplate;
        e.q = 1.0;
        return e;
    };
    const auto pbs_h = [] {
        OpticalElement e;
        e.kind = OpticalElement::Kind::pbs;
        e.port = PbsPort::transmit_H;
        return e;
    };

    SetupDescriptor setup;
    setup.input_pol = Pol::H;
    setup.input_oam = 0;

    if (std::abs(m.determinant()) <= 1e-9) {
        // Separable target p (x) o: wave plates put the OAM qubit onto the
        // circular components (o_+2 rides |L>), the q-plate + PBS move it to
        // OAM with |H> polarization, and the second plate pair prepares p.
        const double rh = m.row(0).squaredNorm();
        const double rv = m.row(1).squaredNorm();
        Eigen::Vector2cd o = (rh >= rv ? m.row(0) : m.row(1)).transpose();
        o.normalize();
        const int cstar = std::abs(o(0)) >= std::abs(o(1)) ? 0 : 1;
        Eigen::Vector2cd p(m(0, cstar) / o(cstar), m(1, cstar) / o(cstar));
        p.normalize();
        const Eigen::Vector2cd chi((o(0) + o(1)) * kInvSqrt2, i * (o(0) - o(1)) * kInvSqrt2);
        const PlatePair first = pol_prep_plates(chi);
        const PlatePair second = pol_prep_plates(p);
        setup.elements = {hwp(first.hwp_deg),  qwp(first.qwp_deg), qplate1(),
                          pbs_h(),             hwp(second.hwp_deg), qwp(second.qwp_deg)};
    } else {
        // Entangling route: valid when the polarization conditionals at +2
        // and -2 are orthogonal. chi = |x+| |L> + |x-| |R> through the
        // q-plate gives |x+| |R,+2> + |x-| |L,-2>; the QHQ stage then maps
        // R -> x+_hat, L -> x-_hat.
        const Eigen::Vector2cd xp(t(0), t(2));
        const Eigen::Vector2cd xm(t(1), t(3));
        if (std::abs(xp.dot(xm)) > 1e-9)
            throw std::invalid_argument(
                "design_preparation: target is neither separable nor reachable by the "
                "entangling route");
        const double np = xp.norm(), nm = xm.norm();
        const Eigen::Vector2cd chi((np + nm) * kInvSqrt2, i * (np - nm) * kInvSqrt2);
        const Eigen::Vector2cd rket(kInvSqrt2, -i * kInvSqrt2);
        const Eigen::Vector2cd lket(kInvSqrt2, i * kInvSqrt2);
        const Eigen::Matrix2cd u = (xp / np) * rket.adjoint() + (xm / nm) * lket.adjoint();
        const PlatePair first = pol_prep_plates(chi);
        const QhqAngles qhq = decompose_pol_unitary(u);
        setup.elements = {hwp(first.hwp_deg),     qwp(first.qwp_deg), qplate1(),
                          qwp(qhq.qwp_first_deg), hwp(qhq.hwp_deg),   qwp(qhq.qwp_last_deg)};
    }

    const PreparedQuquart prep = prepare_state(setup);
    Complex ip = 0.0;
    for (int k = 0; k < 4; ++k)
        ip += std::conj(prep.amplitudes[static_cast<std::size_t>(k)]) * t(k);
    if (std::norm(ip) < 1.0 - 1e-9)
        throw std::logic_error("design_preparation: self-check failed");
    return setup;
}

namespace {

std::string kind_name(OpticalElement::Kind k) {
    switch (k) {
    case OpticalElement::Kind::hwp:
        return "hwp";
    case OpticalElement::Kind::qwp:
        return "qwp";
    case OpticalElement::Kind::qplate:
        return "qplate";
    case OpticalElement::Kind::pbs:
        return "pbs";
    case OpticalElement::Kind::polarizer:
        return "polarizer";
    case OpticalElement::Kind::transfer_pi_to_o2:
        return "transfer_pi_to_o2";
    case OpticalElement::Kind::transfer_o2_to_pi:
        return "transfer_o2_to_pi";
    }
    return "?";
}

}  // namespace

SetupDescriptor SetupDescriptor::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("setup: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("setup: top level must be an object");
    if (!doc.contains("input") || !doc["input"].is_object())
        throw std::invalid_argument("input: expected an object with pol and oam");
    const auto& input = doc["input"];
    if (!input.contains("pol") || !input["pol"].is_string())
        throw std::invalid_argument("input.pol: expected \"H\" or \"V\"");
    if (!input.contains("oam") || !input["oam"].is_number_integer())
        throw std::invalid_argument("input.oam: expected an integer");
    SetupDescriptor setup;
    const std::string pol = input["pol"].get<std::string>();
    if (pol == "H")
        setup.input_pol = Pol::H;
    else if (pol == "V")
        setup.input_pol = Pol::V;
    else
        throw std::invalid_argument("input.pol: expected \"H\" or \"V\", got \"" + pol + "\"");
    setup.input_oam = input["oam"].get<int>();
    if (oam_slot(setup.input_oam) < 0)
        throw std::invalid_argument("input.oam: outside the register {-2, 0, +2}");
    if (!doc.contains("elements") || !doc["elements"].is_array())
        throw std::invalid_argument("elements: expected an array");
    for (std::size_t k = 0; k < doc["elements"].size(); ++k) {
        const auto& j = doc["elements"][k];
        const std::string where = "elements[" + std::to_string(k) + "]";
        if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
            throw std::invalid_argument(where + ".kind: expected a string");
        const std::string kind = j["kind"].get<std::string>();
        OpticalElement e;
        if (kind == "hwp" || kind == "qwp" || kind == "polarizer") {
            e.kind = kind == "hwp" ? OpticalElement::Kind::hwp
                     : kind == "qwp" ? OpticalElement::Kind::qwp
                                     : OpticalElement::Kind::polarizer;
            if (!j.contains("deg") || !j["deg"].is_number())
                throw std::invalid_argument(where + ".deg: expected a number");
            e.angle_deg = j["deg"].get<double>();
        } else if (kind == "qplate") {
            e.kind = OpticalElement::Kind::qplate;
            if (!j.contains("q") || !j["q"].is_number())
                throw std::invalid_argument(where + ".q: expected a number");
            e.q = j["q"].get<double>();
        } else if (kind == "pbs") {
            e.kind = OpticalElement::Kind::pbs;
            if (!j.contains("port") || !j["port"].is_string())
                throw std::invalid_argument(where + ".port: expected a string");
            const std::string port = j["port"].get<std::string>();
            if (port == "transmit_H")
                e.port = PbsPort::transmit_H;
            else if (port == "reflect_V")
                e.port = PbsPort::reflect_V;
            else
                throw std::invalid_argument(where + ".port: expected transmit_H or reflect_V");
        } else if (kind == "transfer_pi_to_o2") {
            e.kind = OpticalElement::Kind::transfer_pi_to_o2;
        } else if (kind == "transfer_o2_to_pi") {
            e.kind = OpticalElement::Kind::transfer_o2_to_pi;
        } else {
            throw std::invalid_argument(where + ".kind: unknown element \"" + kind + "\"");
        }
        setup.elements.push_back(e);
    }
    return setup;
}

SetupDescriptor SetupDescriptor::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("setup: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string SetupDescriptor::to_json_text() const {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json input;
    input["pol"] = input_pol == Pol::H ? "H" : "V";
    input["oam"] = input_oam;
    doc["input"] = input;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : elements) {
        nlohmann::ordered_json j;
        j["kind"] = kind_name(e.kind);
        switch (e.kind) {
        case OpticalElement::Kind::hwp:
        case OpticalElement::Kind::qwp:
        case OpticalElement::Kind::polarizer:
            j["deg"] = round12(e.angle_deg);
            break;
        case OpticalElement::Kind::qplate:
            j["q"] = round12(e.q);
            break;
        case OpticalElement::Kind::pbs:
            j["port"] = e.port == PbsPort::transmit_H ? "transmit_H" : "reflect_V";
            break;
        default:
            break;
        }
        arr.push_back(j);
    }
    doc["elements"] = arr;
    return doc.dump(2) + "\n";
}

}  // namespace exwb
