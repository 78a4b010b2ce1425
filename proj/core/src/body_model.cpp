#include "cardbox/body_model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cardbox/errors.hpp"

namespace cardbox {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_finite(const double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(v[i])) return false;
    return true;
}

// Two perpendicular central patches for a limb segment: bone along local -Z
// from the segment origin, shared width.
void add_limb_patches(std::vector<BodyPatch>& patches, Segment seg, double length, double width) {
    const double w = width / 2.0;
    patches.push_back({seg,
                       {Vec3{0, -w, -length}, Vec3{0, w, -length}, Vec3{0, w, 0}, Vec3{0, -w, 0}}});
    patches.push_back({seg,
                       {Vec3{-w, 0, -length}, Vec3{w, 0, -length}, Vec3{w, 0, 0}, Vec3{-w, 0, 0}}});
}

}  // namespace

SizeParams SizeParams::canonical() {
    SizeParams s;
    s[kTorsoWidthTop] = 36.0;
    s[kTorsoWidthBottom] = 32.0;
    s[kTorsoHeight] = 50.0;
    s[kWaistWidth] = 34.0;
    s[kWaistHeight] = 20.0;
    s[kHeadWidth] = 16.0;
    s[kHeadHeight] = 22.0;
    s[kShoulderOffset] = 20.0;
    s[kTorsoDepth] = 22.0;
    s[kWaistDepth] = 20.0;
    s[kHeadDepth] = 20.0;
    s[kNeckLength] = 6.0;
    s[kUpperArmLength] = 28.0;
    s[kUpperArmWidth] = 10.0;
    s[kForearmLength] = 25.0;
    s[kForearmWidth] = 8.0;
    s[kHandLength] = 18.0;
    s[kHandWidth] = 9.0;
    return s;
}

JointLimits JointLimits::defaults() {
    JointLimits l;
    for (std::size_t i = 0; i < kPostureDof; ++i) {
        l.lo[i] = -kPi / 2.0;
        l.hi[i] = kPi / 2.0;
    }
    l.lo[kTorsoRotZ] = -kPi;
    l.hi[kTorsoRotZ] = kPi;
    l.lo[kTorsoTransY] = -1e9;
    l.hi[kTorsoTransY] = 1e9;
    return l;
}

bool JointLimits::contains(const PostureParams& p) const {
    for (std::size_t i = 0; i < kPostureDof; ++i)
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
}

double JointLimits::clamp_dof(std::size_t i, double value) const {
    if (value < lo[i]) return lo[i];
    if (value > hi[i]) return hi[i];
    return value;
}

const std::array<const char*, JointPositions::kCount>& JointPositions::names() {
    static const std::array<const char*, kCount> kNames{
        "torso", "l_shoulder", "l_elbow", "l_hand", "r_shoulder", "r_elbow", "r_hand"};
    return kNames;
}

Vec3 JointPositions::by_index(std::size_t i) const {
    switch (i) {
        case 0: return torso_center;
        case 1: return l_shoulder;
        case 2: return l_elbow;
        case 3: return l_hand;
        case 4: return r_shoulder;
        case 5: return r_elbow;
        case 6: return r_hand;
        default: throw std::out_of_range("joint index");
    }
}

Vec3 BodyModel::shoulder_offset(bool left) const {
    return {0.0, left ? sizes_[kShoulderOffset] : -sizes_[kShoulderOffset],
            sizes_[kTorsoHeight] / 2.0};
}

BodyModel build_model(const SizeParams& sizes, double fixed_trans_x, double fixed_trans_z,
                      const JointLimits& limits) {
    for (std::size_t i = 0; i < kSizeCount; ++i) {
        if (!std::isfinite(sizes[i]) || sizes[i] <= 0.0)
            throw std::invalid_argument("size parameter a" + std::to_string(i + 1) +
                                        " must be positive and finite");
    }
    if (!std::isfinite(fixed_trans_x) || !std::isfinite(fixed_trans_z))
        throw std::invalid_argument("fixed torso translations must be finite");

    BodyModel model;
    model.sizes_ = sizes;
    model.fixed_trans_x_ = fixed_trans_x;
    model.fixed_trans_z_ = fixed_trans_z;
    model.limits_ = limits;

    const double torso_h = sizes[kTorsoHeight] / 2.0;
    const double wt = sizes[kTorsoWidthTop] / 2.0;
    const double wb = sizes[kTorsoWidthBottom] / 2.0;
    const double td = sizes[kTorsoDepth] / 2.0;

    auto& patches = model.patches_;
    // Torso: frontal (trapezoid, width a1 at the shoulders, a2 at the waist
    // line), sagittal, and a transverse patch at the shoulder line.
    patches.push_back({Segment::Torso,
                       {Vec3{0, -wb, -torso_h}, Vec3{0, wb, -torso_h}, Vec3{0, wt, torso_h},
                        Vec3{0, -wt, torso_h}}});
    patches.push_back({Segment::Torso,
                       {Vec3{-td, 0, -torso_h}, Vec3{td, 0, -torso_h}, Vec3{td, 0, torso_h},
                        Vec3{-td, 0, torso_h}}});
    patches.push_back({Segment::Torso,
                       {Vec3{-td, -wt, torso_h}, Vec3{td, -wt, torso_h}, Vec3{td, wt, torso_h},
                        Vec3{-td, wt, torso_h}}});

    const double waist_w = sizes[kWaistWidth] / 2.0;
    const double waist_h = sizes[kWaistHeight] / 2.0;
    const double waist_d = sizes[kWaistDepth] / 2.0;
    patches.push_back({Segment::Waist,
                       {Vec3{0, -waist_w, -waist_h}, Vec3{0, waist_w, -waist_h},
                        Vec3{0, waist_w, waist_h}, Vec3{0, -waist_w, waist_h}}});
    patches.push_back({Segment::Waist,
                       {Vec3{-waist_d, 0, -waist_h}, Vec3{waist_d, 0, -waist_h},
                        Vec3{waist_d, 0, waist_h}, Vec3{-waist_d, 0, waist_h}}});

    const double head_w = sizes[kHeadWidth] / 2.0;
    const double head_h = sizes[kHeadHeight] / 2.0;
    const double head_d = sizes[kHeadDepth] / 2.0;
    patches.push_back({Segment::Head,
                       {Vec3{0, -head_w, -head_h}, Vec3{0, head_w, -head_h},
                        Vec3{0, head_w, head_h}, Vec3{0, -head_w, head_h}}});
    patches.push_back({Segment::Head,
                       {Vec3{-head_d, 0, -head_h}, Vec3{head_d, 0, -head_h},
                        Vec3{head_d, 0, head_h}, Vec3{-head_d, 0, head_h}}});

    for (Segment seg : {Segment::LUpperArm, Segment::RUpperArm})
        add_limb_patches(patches, seg, sizes[kUpperArmLength], sizes[kUpperArmWidth]);
    for (Segment seg : {Segment::LForearm, Segment::RForearm})
        add_limb_patches(patches, seg, sizes[kForearmLength], sizes[kForearmWidth]);
    for (Segment seg : {Segment::LHand, Segment::RHand})
        add_limb_patches(patches, seg, sizes[kHandLength], sizes[kHandWidth]);

    return model;
}

PosedBody forward_kinematics(const BodyModel& model, const PostureParams& posture) {
    if (!all_finite(posture.d.data(), kPostureDof))
        throw std::invalid_argument("posture contains non-finite values");
    if (!model.limits().contains(posture))
        throw std::invalid_argument("posture violates joint limits");

    const SizeParams& a = model.sizes();

    const RigidTransform torso{
        rot_zyx(posture[kTorsoRotZ], posture[kTorsoRotY], posture[kTorsoRotX]),
        Vec3{model.fixed_trans_x(), posture[kTorsoTransY], model.fixed_trans_z()}};

    const RigidTransform waist{
        torso.rotation,
        torso.apply({0, 0, -a[kTorsoHeight] / 2.0 - a[kWaistHeight] / 2.0})};
    const RigidTransform head{
        torso.rotation,
        torso.apply({0, 0, a[kTorsoHeight] / 2.0 + a[kNeckLength] + a[kHeadHeight] / 2.0})};

    std::array<RigidTransform, kSegmentCount> seg_tf;
    seg_tf[static_cast<std::size_t>(Segment::Torso)] = torso;
    seg_tf[static_cast<std::size_t>(Segment::Waist)] = waist;
    seg_tf[static_cast<std::size_t>(Segment::Head)] = head;

    PosedBody posed;
    posed.joints.torso_center = torso.translation;

    // shoulder -> elbow -> hand chain per arm
    const struct {
        bool left;
        Segment upper, fore, hand;
        std::size_t flex;
    } arms[2] = {{true, Segment::LUpperArm, Segment::LForearm, Segment::LHand, kLShoulderFlex},
                 {false, Segment::RUpperArm, Segment::RForearm, Segment::RHand, kRShoulderFlex}};

    for (const auto& arm : arms) {
        const Vec3 shoulder = torso.apply(model.shoulder_offset(arm.left));
        const Mat3 upper_rot =
            torso.rotation * rot_y(posture[arm.flex]) * rot_x(posture[arm.flex + 1]);
        const RigidTransform upper{upper_rot, shoulder};
        const Vec3 elbow = upper.apply({0, 0, -a[kUpperArmLength]});
        const Mat3 fore_rot =
            upper_rot * rot_y(posture[arm.flex + 2]) * rot_x(posture[arm.flex + 3]);
        const RigidTransform fore{fore_rot, elbow};
        const Vec3 wrist = fore.apply({0, 0, -a[kForearmLength]});
        const RigidTransform hand{fore_rot, wrist};
        const Vec3 hand_tip = fore.apply({0, 0, -(a[kForearmLength] + a[kHandLength])});

        seg_tf[static_cast<std::size_t>(arm.upper)] = upper;
        seg_tf[static_cast<std::size_t>(arm.fore)] = fore;
        seg_tf[static_cast<std::size_t>(arm.hand)] = hand;

        if (arm.left) {
            posed.joints.l_shoulder = shoulder;
            posed.joints.l_elbow = elbow;
            posed.joints.l_hand = hand_tip;
        } else {
            posed.joints.r_shoulder = shoulder;
            posed.joints.r_elbow = elbow;
            posed.joints.r_hand = hand_tip;
        }
    }

    posed.patches.reserve(model.patches().size());
    for (const BodyPatch& patch : model.patches()) {
        const RigidTransform& tf = seg_tf[static_cast<std::size_t>(patch.segment)];
        PatchQuad quad;
        for (int i = 0; i < 4; ++i) quad[i] = tf.apply(patch.corners[i]);
        posed.patches.push_back(quad);
    }
    return posed;
}

namespace {

std::vector<double> parse_csv_doubles(const std::string& line, std::size_t expected,
                                      const char* what) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const char* begin = token.data();
        const char* end = token.data() + token.size();
        while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
        while (end > begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
        double v = 0.0;
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            throw DataError(std::string(what) + ": cannot parse value '" + token + "'");
        values.push_back(v);
    }
    if (values.size() != expected)
        throw DataError(std::string(what) + ": expected " + std::to_string(expected) +
                        " values, got " + std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v)) throw DataError(std::string(what) + ": non-finite value");
    return values;
}

std::string format_csv_doubles(const double* v, std::size_t n) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v[i]);
        if (i) out += ',';
        out.append(buf, res.ptr);
    }
    return out;
}

}  // namespace

SizeParams parse_sizes_line(const std::string& line) {
    const auto values = parse_csv_doubles(line, kSizeCount, "size parameters");
    SizeParams s;
    std::copy(values.begin(), values.end(), s.a.begin());
    return s;
}

SizeParams load_sizes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open size file: " + path.string());
    std::string line;
    std::getline(in, line);
    return parse_sizes_line(line);
}

void save_sizes(const SizeParams& sizes, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write size file: " + path.string());
    out << format_csv_doubles(sizes.a.data(), kSizeCount) << "\n";
}

PostureParams parse_posture_line(const std::string& line) {
    const auto values = parse_csv_doubles(line, kPostureDof, "posture parameters");
    PostureParams p;
    std::copy(values.begin(), values.end(), p.d.begin());
    return p;
}

std::string format_posture_line(const PostureParams& posture) {
    return format_csv_doubles(posture.d.data(), kPostureDof);
}

}  // namespace cardbox
