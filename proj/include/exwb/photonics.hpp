#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace exwb {

using Complex = std::complex<double>;

// Ordered ququart basis {|H,+2>, |H,-2>, |V,+2>, |V,-2>}.
using Ququart = std::array<Complex, 4>;

// Circular-basis convention used throughout this module:
//   |R> = (|H> - i|V>)/sqrt(2),   |L> = (|H> + i|V>)/sqrt(2).
// Under it a QWP at 45 degrees turns |H> into |R>.

enum class Pol { H, V };

inline constexpr std::array<int, 3> kOamRegister = {-2, 0, +2};

// Polarization x OAM amplitudes over the register {-2, 0, +2}. Unitary
// elements keep the total squared amplitude at 1; postselecting elements
// renormalize and fold the kept weight into postselection_probability.
struct PhotonState {
    // amp[pol][slot]; pol 0=H, 1=V; slots follow kOamRegister.
    std::array<std::array<Complex, 3>, 2> amp{};
    double postselection_probability = 1.0;

    static PhotonState basis(Pol pol, int oam);
    double norm2() const;
};

enum class WaveplateKind { half, quarter };
enum class PbsPort { transmit_H, reflect_V };

struct OpticalElement {
    enum class Kind { hwp, qwp, qplate, pbs, polarizer, transfer_pi_to_o2, transfer_o2_to_pi };
    Kind kind = Kind::hwp;
    double angle_deg = 0.0;                 // hwp, qwp, polarizer
    double q = 0.0;                         // qplate
    PbsPort port = PbsPort::transmit_H;     // pbs
};

struct SetupDescriptor {
    Pol input_pol = Pol::H;
    int input_oam = 0;
    std::vector<OpticalElement> elements;  // applied left to right

    static SetupDescriptor from_json_text(const std::string& text);
    static SetupDescriptor load(const std::string& path);
    std::string to_json_text() const;
};

// Jones matrices in the H/V basis; angles in degrees from the H axis.
Eigen::Matrix2cd hwp_matrix(double angle_deg);
Eigen::Matrix2cd qwp_matrix(double angle_deg);

PhotonState apply_waveplate(const PhotonState& s, WaveplateKind kind, double angle_deg);

// |L,m> -> |R,m+2q>, |R,m> -> |L,m-2q>. Throws on OAM register overflow and
// on q that is not a half-integer.
PhotonState apply_qplate(const PhotonState& s, double q);

PhotonState apply_pbs(const PhotonState& s, PbsPort port);
PhotonState apply_polarizer(const PhotonState& s, double angle_deg);

// Probabilistic pi -> o2 transferrer: q-plate then PBS, success 1/2 on a pure
// polarization input at OAM 0. Requires all amplitude at m = 0.
PhotonState apply_transfer_pi_to_o2(const PhotonState& s);

// Deterministic o2 -> pi transferrer (modeled as a black box): takes a
// polarization-separable state a|+2> + b|-2> to a|H,0> + b|V,0> with success 1.
// Requires no m = 0 amplitude and no polarization-OAM entanglement.
PhotonState apply_transfer_o2_to_pi(const PhotonState& s);

PhotonState apply_element(const PhotonState& s, const OpticalElement& e);

struct PreparedQuquart {
    Ququart amplitudes{};
    double success_probability = 1.0;
};

// Runs the setup and reads out the ququart amplitudes. Throws if more than
// 1e-12 amplitude is left at m = 0 (incomplete transfer).
PreparedQuquart prepare_state(const SetupDescriptor& setup);

// Projection probability |<analyzer|state>|^2 with both sides normalized.
// The optical analysis chain (transferrer plus polarization analysis for
// separable analyzers, q-plate plus polarization analysis for entangled ones)
// reduces to exactly this inner product; see the pipeline test.
double analyze_projection(const Ququart& state, const Ququart& analyzer);

struct PlatePair {
    double hwp_deg = 0.0;  // light hits the HWP first
    double qwp_deg = 0.0;
};

// Angles with QWP(qwp) * HWP(hwp) |H> equal to `target` up to global phase.
PlatePair pol_prep_plates(const Eigen::Vector2cd& target);

struct QhqAngles {
    double qwp_first_deg = 0.0;
    double hwp_deg = 0.0;
    double qwp_last_deg = 0.0;
};

// QWP(last) * HWP(mid) * QWP(first) equal to `u` up to global phase, for any
// polarization unitary u.
QhqAngles decompose_pol_unitary(const Eigen::Matrix2cd& u);

// Builds a preparation setup for the (normalized) target ququart from |H,0>:
// polarization-OAM separable targets get wave plates + q-plate + PBS + wave
// plates (success 1/2); targets whose +2/-2 polarization conditionals are
// orthogonal get wave plates + q-plate + a QHQ stage (success 1).
SetupDescriptor design_preparation(const Ququart& target);

}  // namespace exwb
