#pragma once

#include <string_view>

namespace revlens::data {

// Default English stoplist: function words only. Negations (not, no, nor)
// and "now" are kept out on purpose; they carry meaning in review text.
inline constexpr std::string_view kStoplist = R"STOP(
a about above after again against all am an and any are as at
be because been before being below between both but by
can could did do does doing down during each few for from further
had has have having he her here hers herself him himself his how
i if in into is it its itself just me more most my myself
of off on once only or other our ours ourselves out over own
same she should so some such than that the their theirs them themselves then
there these they this those through to too under until up very
was we were what when where which while who whom why will with would
you your yours yourself yourselves
s t d ll m o re ve y
shall may might must also
)STOP";

}  // namespace revlens::data
