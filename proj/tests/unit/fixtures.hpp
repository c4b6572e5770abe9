#pragma once

#include "wedge/tracy_widom.hpp"

namespace wedge::testfix {

// The full table build takes a couple of seconds; share one instance.
inline const TracyWidom& shared_tw() {
    static const TracyWidom tw(F4Convention::argument_sqrt2);
    return tw;
}

} // namespace wedge::testfix
