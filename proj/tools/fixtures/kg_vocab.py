"""Vocabulary of the bundled mini knowledge graph."""

# (lemmas, entity_type, domains, gloss); the first lemma is the label.
MISSIONS = [
    "Athena", "Rosetta", "Gaia", "Euclid", "Plato", "Ariel", "Juice", "BepiColombo",
    "Solar Orbiter", "ExoMars", "Sentinel-1", "Sentinel-2", "Sentinel-3", "Sentinel-5P",
    "Sentinel-6", "CryoSat", "SMOS", "Aeolus", "Biomass", "FLEX", "Swarm", "GOCE",
    "Envisat", "Hubble", "James Webb Space Telescope", "LISA", "Mars Express",
    "Venus Express", "Cassini", "Huygens", "Herschel", "Planck", "XMM-Newton", "Integral",
    "Proba-V", "Cheops", "Hera", "Lunar Gateway", "Artemis", "Copernicus", "Galileo",
    "EarthCARE", "MetOp", "Meteosat", "Juno", "Voyager", "Apollo", "Chandrayaan",
    "Hayabusa", "OSIRIS-REx", "Perseverance", "Curiosity", "InSight", "Dragonfly",
    "Comet Interceptor", "EnVision", "TRUTHS", "CHIME", "CIMR", "CO2M", "Harmony",
    "FORUM", "SMILE", "ClearSpace-1", "Moonlight", "Argonaut",
]

LAUNCHERS = [
    "Ariane 5", "Ariane 6", "Vega", "Vega-C", "Soyuz", "Falcon 9", "Falcon Heavy",
    "Atlas V", "Delta IV", "Proton", "H-IIA", "H3", "Long March", "PSLV", "Electron",
    "Space Launch System", "Starship", "New Glenn", "Antares", "Rokot", "Dnepr",
]

ORGANIZATIONS = [
    ["European Space Agency", "ESA"], ["NASA"], ["JAXA"], ["Roscosmos"], ["CNES"], ["DLR"],
    ["Italian Space Agency", "ASI"], ["UK Space Agency"], ["ISRO"], ["CNSA"], ["EUMETSAT"],
    ["ECMWF"], ["World Health Organization", "WHO"], ["World Meteorological Organization", "WMO"],
    ["United Nations"], ["European Commission"], ["Airbus Defence and Space", "Airbus"],
    ["Thales Alenia Space"], ["OHB"], ["Arianespace"], ["SpaceX"], ["Blue Origin"],
    ["Rocket Lab"], ["Lockheed Martin"], ["Boeing"], ["Northrop Grumman"], ["Telespazio"],
    ["GMV"], ["Surrey Satellite Technology"], ["ESTEC"], ["ESOC"], ["ESRIN"],
    ["European Astronaut Centre"], ["Concurrent Design Facility", "CDF"],
    ["International Space Station", "ISS"], ["Red Cross"], ["Mars Society"],
]

PEOPLE = [
    "Galileo Galilei", "Isaac Newton", "Johannes Kepler", "Yuri Gagarin", "Neil Armstrong",
    "Buzz Aldrin", "Sally Ride", "Valentina Tereshkova", "Samantha Cristoforetti", "Tim Peake",
    "Thomas Pesquet", "Alexander Gerst", "Andre Kuipers", "Luca Parmitano", "Claudie Haignere",
    "Ulf Merbold", "Josef Aschbacher", "Jean-Jacques Dordain", "Edwin Hubble", "Carl Sagan",
    "Wernher von Braun", "Konstantin Tsiolkovsky", "Hermann Oberth", "Robert Goddard",
    "Sergei Korolev", "Chris Hadfield", "Peggy Whitson", "Scott Kelly", "Frank De Winne",
    "Pedro Duque",
]

PLACES = [
    "Kourou", "French Guiana", "Baikonur", "Cape Canaveral", "Noordwijk", "Darmstadt",
    "Frascati", "Cologne", "Toulouse", "Bremen", "Turin", "Paris", "Madrid", "Villafranca",
    "Redu", "Kiruna", "Svalbard", "Plesetsk", "Vandenberg", "Tanegashima", "Sriharikota",
    "Jiuquan", "Wenchang", "Houston", "Pasadena", "Greenland", "Antarctica", "Arctic",
    "Sahara", "Amazon", "Pacific Ocean", "Atlantic Ocean", "Indian Ocean",
    "Mediterranean Sea", "Europe", "Africa", "Asia", "South America", "Alps", "Himalaya",
    "Netherlands", "Germany", "France", "Italy", "Spain", "Belgium", "Sweden", "Norway",
]

# domain -> common terms
TERMS = {
    "instrument": [
        "synthetic aperture radar", "radar altimeter", "microwave radiometer", "spectrometer",
        "imaging spectrometer", "lidar", "magnetometer", "star tracker", "gyroscope",
        "thermal infrared sensor", "multispectral imager", "X-ray telescope", "wide field imager",
        "X-ray integral field unit", "interferometer", "coronagraph", "photometer", "seismometer",
        "ground penetrating radar", "mass spectrometer", "particle detector", "sun sensor",
        "GNSS receiver", "laser retroreflector", "scatterometer", "sounder", "bolometer",
        "detector", "camera", "telescope", "mirror", "optics", "focal plane", "focal length",
        "instrument", "sensor", "calibration",
    ],
    "spacecraft": [
        "solar array", "solar panel", "battery", "antenna", "high gain antenna", "transponder",
        "thruster", "propellant tank", "attitude control", "on-board computer",
        "power subsystem", "thermal control", "radiator", "multilayer insulation", "harness",
        "structure", "platform", "service module", "docking port", "heat shield", "parachute",
        "lander", "rover", "orbiter", "probe", "satellite", "spacecraft", "constellation",
        "small satellite", "cubesat", "nanosatellite", "deployable boom", "sunshield",
        "mechanism", "launch adapter", "subsystem", "mass", "power", "margin", "redundancy",
        "design", "configuration", "module", "avionics", "software",
    ],
    "launcher": [
        "launcher", "launch vehicle", "fairing", "upper stage", "booster", "stage",
        "rocket engine", "launch", "launch site", "launch window", "lift-off", "reusability",
        "rocket",
    ],
    "propulsion": [
        "propulsion", "propulsion system", "electric propulsion", "ion engine", "hall thruster",
        "chemical propulsion", "hydrazine", "xenon", "cold gas", "reaction control system",
        "propellant", "specific impulse", "thrust", "green propellant", "solar sail",
        "nuclear propulsion", "methane engine",
    ],
    "communications": [
        "telemetry", "telecommand", "ground station", "mission control", "downlink", "uplink",
        "data rate", "bandwidth", "X-band", "Ka-band", "S-band", "link budget",
        "optical communication", "laser communication", "quantum communication",
        "relay satellite", "internet of things", "5G", "broadband", "signal",
    ],
    "mission_analysis": [
        "orbit", "low earth orbit", "geostationary orbit", "sun-synchronous orbit",
        "Lagrange point", "halo orbit", "transfer orbit", "trajectory", "gravity assist",
        "flyby", "rendezvous", "re-entry", "deorbiting", "end of life", "delta-v",
        "mass budget", "power budget", "mission lifetime", "orbital altitude", "inclination",
        "eclipse", "ground track", "revisit time", "coverage",
    ],
    "space_debris": [
        "space debris", "collision avoidance", "debris removal", "conjunction", "fragmentation",
        "space traffic management", "space surveillance", "tracking", "debris population",
        "active debris removal", "mega-constellation", "kessler syndrome", "passivation",
        "capture", "robotic arm", "net capture", "harpoon", "tether", "drag sail",
    ],
    "earth_observation": [
        "sea surface temperature", "sea level", "sea ice", "ice sheet", "glacier",
        "soil moisture", "ocean salinity", "land cover", "vegetation index", "deforestation",
        "wildfire", "flood", "drought", "precipitation", "cloud cover", "remote sensing",
        "earth observation", "crop yield", "agriculture", "water resources", "coastal erosion",
        "sediment", "soil sample", "plankton", "coral reef", "biodiversity", "ecosystem",
        "chlorophyll", "albedo", "permafrost", "snow cover", "land surface temperature",
        "urban heat island", "image", "resolution", "pixel", "map", "mapping", "forest",
        "ocean", "soil", "land", "vegetation", "river", "lake", "coast", "ice",
    ],
    "climate": [
        "climate", "climate change", "global warming", "greenhouse gas", "carbon dioxide",
        "methane", "ozone", "aerosol", "El Nino", "ENSO", "monsoon", "ocean current",
        "carbon cycle", "water cycle", "climate model", "reanalysis", "weather forecast",
        "air quality", "atmosphere", "troposphere", "stratosphere", "temperature", "emission",
        "weather", "storm", "hurricane", "rainfall", "wind", "heat wave",
    ],
    "space_weather": [
        "ionosphere", "magnetosphere", "solar wind", "space weather", "geomagnetic storm",
        "solar flare", "coronal mass ejection", "radiation belt", "aurora", "cosmic ray",
    ],
    "astronomy": [
        "exoplanet", "black hole", "galaxy", "galaxy cluster", "dark matter", "dark energy",
        "cosmic microwave background", "star", "stellar evolution", "supernova",
        "neutron star", "gravitational wave", "hot gas", "X-ray astronomy", "redshift",
        "universe", "cosmology", "light curve", "spectrum", "planetary transit", "astrometry",
    ],
    "planetary": [
        "asteroid", "comet", "meteorite", "Kuiper belt", "solar system", "Sun", "planet",
        "Moon", "Mars", "Venus", "Jupiter", "Saturn", "Titan", "Europa", "Ganymede",
        "Enceladus", "regolith", "crater", "lunar surface", "lunar south pole", "water ice",
        "lava tube", "habitability", "astrobiology", "sample return", "planetary defence",
        "impact", "surface", "subsurface", "dust", "volcano",
    ],
    "exploration": [
        "in-situ resource utilization", "lunar base", "habitat", "life support",
        "human spaceflight", "astronaut", "crew", "spacewalk", "space station",
        "oxygen production", "3D printing", "additive manufacturing", "construction",
        "excavation", "mining", "power plant", "nuclear reactor", "greenhouse",
    ],
    "health": [
        "telemedicine", "astronaut health", "bone loss", "muscle atrophy", "radiation exposure",
        "microgravity", "epidemiology", "disease outbreak", "public health", "vaccine",
        "malaria", "health", "hospital", "patient", "doctor", "diagnosis", "medicine",
        "wearable sensor", "heart rate", "sleep", "nutrition", "remote area",
    ],
    "technology": [
        "machine learning", "artificial intelligence", "neural network", "data fusion",
        "big data", "cloud computing", "blockchain", "digital twin", "robotics", "autonomy",
        "navigation", "positioning", "GNSS", "cybersecurity", "algorithm", "data", "model",
        "simulation", "processing", "network", "technology", "system", "service",
        "application", "platform service", "open source", "database", "data centre",
    ],
    "quality": [
        "problem report", "nonconformance", "root cause", "root cause identification",
        "corrective action", "preventive action", "quality assurance", "product assurance",
        "audit", "review board", "configuration management", "verification", "validation",
        "test plan", "acceptance review", "critical design review", "preliminary design review",
        "requirement", "specification", "deviation", "waiver", "inspection", "traceability",
        "risk assessment", "failure mode", "FMECA", "reliability", "safety", "hazard",
        "document control", "procedure", "supplier", "customer", "closure", "quality manager",
        "project manager", "anomaly", "test", "review", "approval", "record", "lesson learned",
        "alert", "investigation", "signature", "board", "classification", "major nonconformance",
        "minor nonconformance", "repair", "rework", "scrap", "use as is",
    ],
    "programmatics": [
        "mission", "project", "programme", "study", "phase", "cost", "schedule", "budget",
        "industry", "contract", "partner", "agency", "member state", "proposal", "idea",
        "innovation", "startup", "market", "business", "user", "stakeholder", "team",
    ],
    "logistics": [
        "truck", "cargo", "freight", "warehouse", "pallet", "forklift", "shipment",
        "delivery", "container", "port",
    ],
}

# lemmas that need two senses; (lemma, [(domain, gloss)])
AMBIGUOUS = [
    ("payload", [("spacecraft", "instruments carried by a spacecraft"),
                 ("logistics", "goods carried by a vehicle")]),
    ("bus", [("spacecraft", "spacecraft platform housing the subsystems"),
             ("logistics", "road vehicle for passengers")]),
    ("mercury", [("planetary", "innermost planet"), ("health", "toxic metal")]),
]

# (kind, src label, dst label)
RELATIONS = [
    ("hypernym", "satellite", "cubesat"),
    ("hypernym", "satellite", "small satellite"),
    ("hypernym", "small satellite", "nanosatellite"),
    ("hypernym", "spacecraft", "satellite"),
    ("hypernym", "spacecraft", "probe"),
    ("hypernym", "spacecraft", "lander"),
    ("hypernym", "spacecraft", "rover"),
    ("hypernym", "spacecraft", "orbiter"),
    ("hypernym", "propulsion", "electric propulsion"),
    ("hypernym", "propulsion", "chemical propulsion"),
    ("hypernym", "electric propulsion", "ion engine"),
    ("hypernym", "electric propulsion", "hall thruster"),
    ("hypernym", "orbit", "low earth orbit"),
    ("hypernym", "orbit", "geostationary orbit"),
    ("hypernym", "orbit", "sun-synchronous orbit"),
    ("hypernym", "nonconformance", "major nonconformance"),
    ("hypernym", "nonconformance", "minor nonconformance"),
    ("hypernym", "launcher", "Ariane 5"),
    ("hypernym", "launcher", "Ariane 6"),
    ("hypernym", "launcher", "Vega"),
    ("hypernym", "launcher", "Falcon 9"),
    ("hypernym", "greenhouse gas", "carbon dioxide"),
    ("hypernym", "greenhouse gas", "methane"),
    ("synonym", "launcher", "launch vehicle"),
    ("synonym", "solar array", "solar panel"),
    ("synonym", "ENSO", "El Nino"),
    ("synonym", "additive manufacturing", "3D printing"),
    ("related", "space debris", "collision avoidance"),
    ("related", "space debris", "debris removal"),
    ("related", "sea surface temperature", "ocean"),
    ("related", "root cause", "problem report"),
    ("related", "Athena", "X-ray telescope"),
    ("related", "regolith", "lunar surface"),
    ("related", "telemedicine", "remote area"),
]
