#pragma once

#include <stdexcept>
#include <string>

namespace qs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QS_DEFINE_ERROR(Name)                      \
    struct Name : Error {                          \
        using Error::Error;                        \
    }

QS_DEFINE_ERROR(ZeroQuaternion);
QS_DEFINE_ERROR(NotUnit);
QS_DEFINE_ERROR(DegeneratePlane);
QS_DEFINE_ERROR(GridTooSmall);
QS_DEFINE_ERROR(NoConvergence);
QS_DEFINE_ERROR(Inconclusive);
QS_DEFINE_ERROR(PathOutsideGrid);
QS_DEFINE_ERROR(RankDeficient);
QS_DEFINE_ERROR(RootInUpsilon);
QS_DEFINE_ERROR(NonzeroPeriods);
QS_DEFINE_ERROR(InconsistentNormal);
QS_DEFINE_ERROR(TrivialProjection);
QS_DEFINE_ERROR(BranchPoint);
QS_DEFINE_ERROR(AmbiguousPreimage);
QS_DEFINE_ERROR(HitsInfinity);
QS_DEFINE_ERROR(ImageOutsideChart);
QS_DEFINE_ERROR(SingularSystem);
QS_DEFINE_ERROR(ZeroOnCircle);
QS_DEFINE_ERROR(AntipodalPair);
QS_DEFINE_ERROR(UnknownSurface);
QS_DEFINE_ERROR(BadBundle);
QS_DEFINE_ERROR(NotImaginary);

#undef QS_DEFINE_ERROR

}  // namespace qs
