"""Documents of the bundled mini corpus: (id, source, date, for_codes, title, body)."""

DOCS = [
    # ideas: debris and constellations
    ("id40", "idea", "2019-03-14", ["0401"], "Harpoon capture of defunct satellites",
     "We propose a small satellite that fires a harpoon at defunct satellites in low earth orbit. "
     "The harpoon is attached to a tether and the chaser performs deorbiting with a drag sail. "
     "Active debris removal of large objects reduces the risk of fragmentation and keeps the "
     "debris population under control. The chaser uses a star tracker and lidar for rendezvous. " 
     "Space debris removal in low earth orbit needs reliable capture of the target satellite."),
    ("id41", "idea", "2020-06-02", ["0401"], "Net capture service for mega-constellations",
     "A commercial service captures failed satellites of a mega-constellation with a net. "
     "The capture is performed at the end of life of each satellite, followed by controlled re-entry. "
     "Debris removal as a service lowers the risk of collisions in low earth orbit. "
     "The robotic arm and the net are tested in microgravity before launch. " 
     "Space debris removal in low earth orbit is offered to constellation operators as a capture service."),
    ("id42", "idea", "2021-09-21", ["0401", "0502"], "Collision avoidance with machine learning",
     "Operators of large constellations receive thousands of conjunction warnings every week. "
     "We propose machine learning to rank each conjunction and to plan collision avoidance manoeuvres "
     "automatically. The algorithm learns from tracking data and from space surveillance catalogues. "
     "Space traffic management would benefit from shared data between operators and agencies. " 
     "Space debris in low earth orbit makes collision avoidance a daily task for satellite operators."),
    ("id43", "idea", "2018-11-30", ["0502"], "Passivation kit for upper stages",
     "Spent upper stages often explode years after launch because of residual propellant. "
     "A passivation kit vents the propellant tank and discharges the battery at end of life. "
     "Passivation prevents fragmentation and limits the growth of space debris in low earth orbit. " 
     "Space debris mitigation in low earth orbit starts with passivation of every upper stage."),
    ("id44", "idea", "2015-05-19", ["0401"], "Laser tracking of small debris",
     "Ground stations equipped with lasers could track debris smaller than ten centimetres. "
     "Laser tracking improves the orbit determination of space debris and reduces false conjunction "
     "alerts. The network of ground stations shares tracking data through a common database. " 
     "Space debris tracking in low earth orbit supports collision avoidance and debris removal planning."),
    # ideas: earth observation and climate
    ("id45", "idea", "2017-02-08", ["0405"], "Sea surface temperature from cubesats",
     "A constellation of cubesats carries a thermal infrared sensor to map sea surface temperature "
     "every three hours. The data improve weather forecast and climate model initialisation. "
     "Coastal upwelling and marine heatwaves are detected from the daily maps of the ocean. " 
     "Earth observation of the ocean supports climate monitoring and sea surface temperature records."),
    ("id46", "idea", "2019-07-16", ["0405", "0406"], "Sea ice thickness with radar altimeter",
     "A radar altimeter on a small satellite measures sea ice freeboard in the Arctic. "
     "Sea ice thickness is derived from the freeboard and snow cover estimates. "
     "The product supports shipping routes and climate change research in the Arctic. " 
     "Earth observation of the ocean and the Arctic supports climate monitoring of sea ice."),
    ("id47", "idea", "2015-04-27", ["0502"], "Wildfire early warning from space",
     "A thermal infrared sensor on a constellation detects wildfire hotspots within minutes. "
     "Alerts are sent to civil protection agencies together with maps of vegetation and soil moisture. "
     "Drought indicators from earth observation help to predict where the next wildfire will start. " 
     "Earth observation maps support climate monitoring of wildfire and drought."),
    ("id48", "idea", "2022-01-11", ["0406"], "Crop yield forecasting with soil moisture",
     "Soil moisture maps from microwave radiometer data are combined with vegetation index time series. "
     "A neural network forecasts crop yield for agriculture in Africa and Europe. "
     "Farmers receive advice on irrigation and water resources through a mobile application. " 
     "Earth observation maps support climate monitoring of soil moisture and drought."),
    ("id49", "idea", "2014-10-03", ["0405"], "Coral reef monitoring",
     "Multispectral imager data are used to map coral reef health and bleaching. "
     "Sea surface temperature anomalies are linked to bleaching events in the Pacific Ocean. "
     "Marine biologists receive weekly maps of the reef ecosystem. " 
     "Earth observation of the ocean supports climate monitoring of coral reef and sea surface temperature."),
    # ideas: moon and resources
    ("id50", "idea", "2020-02-20", ["0403"], "Regolith sintering for lunar base construction",
     "Lunar regolith is sintered with concentrated sunlight to print bricks for a lunar base. "
     "Additive manufacturing with regolith reduces the mass that must be launched from Earth. "
     "The printer is tested on regolith simulant in a vacuum chamber. " 
     "In-situ resource utilization of lunar regolith at the lunar south pole supports a lunar base."),
    ("id51", "idea", "2021-05-05", ["0403", "0401"], "Oxygen production from regolith",
     "Molten salt electrolysis extracts oxygen from lunar regolith. "
     "In-situ resource utilization provides oxygen for life support and for propellant. "
     "A pilot plant near the lunar south pole would demonstrate oxygen production at scale. " 
     "In-situ resource utilization of lunar regolith at the lunar south pole supports a lunar base."),
    ("id52", "idea", "2017-08-09", ["0403"], "Lava tube habitat",
     "Lava tubes on the Moon protect a habitat from radiation exposure and micrometeorites. "
     "A rover with ground penetrating radar maps the lava tube before the crew arrives. "
     "The habitat uses regolith shielding and inflatable modules. " 
     "Lunar regolith shields the lunar base and the crew from radiation exposure."),
    ("id53", "idea", "2013-12-12", ["0299"], "Water ice prospecting rover",
     "A rover drills into permanently shadowed craters near the lunar south pole. "
     "A mass spectrometer measures water ice in the regolith samples. "
     "Water ice is a resource for drinking water, oxygen and propellant. " 
     "In-situ resource utilization of water ice in lunar regolith supports a lunar base."),
    # ideas: health
    ("id54", "idea", "2018-03-03", ["1117"], "Telemedicine kit for remote areas",
     "A telemedicine kit connects patients in remote areas to a doctor through satellite broadband. "
     "The kit includes wearable sensors for heart rate and blood pressure. "
     "Technology developed for astronaut health is transferred to public health services on Earth. " 
     "Telemedicine and public health services benefit from astronaut health research."),
    ("id55", "idea", "2019-10-24", ["1117", "0502"], "Malaria risk maps",
     "Earth observation maps of rainfall, temperature and vegetation feed a malaria risk model. "
     "Public health agencies use the maps to plan vaccine campaigns before the rainy season. "
     "The World Health Organization supports the pilot in Africa. " 
     "Telemedicine and public health services in Africa benefit from earth observation."),
    ("id56", "idea", "2016-06-30", ["1106"], "Bone loss countermeasures",
     "Astronauts lose bone mass in microgravity during long missions. "
     "A vibration platform and nutrition plan reduce bone loss and muscle atrophy. "
     "The same countermeasures help elderly patients on Earth. " 
     "Astronaut health research on bone loss benefits public health and patients."),
    # ideas: propulsion and launch
    ("id57", "idea", "2020-11-18", ["0913"], "Green propellant thruster",
     "A green propellant replaces hydrazine in the reaction control system of small satellites. "
     "The thruster reaches a specific impulse close to hydrazine with lower toxicity. "
     "Handling costs on the launch site drop because no protective suits are required. " 
     "Propulsion of small satellites needs a thruster with low propellant mass."),
    ("id58", "idea", "2021-03-27", ["0913", "0401"], "Reusable upper stage",
     "A reusable upper stage returns from orbit with a heat shield and a parachute. "
     "Reusability lowers the cost of launch for small satellites. "
     "The methane engine is restarted several times during the mission. " 
     "Propulsion with a reusable engine lowers propellant and launch costs."),
    ("id59", "idea", "2022-06-14", ["0913"], "Electric propulsion for orbit raising",
     "Hall thrusters raise geostationary satellites from transfer orbit in a few months. "
     "Electric propulsion saves propellant mass compared to chemical propulsion. "
     "Xenon supply and thrust levels are the main design drivers. " 
     "Propulsion with hall thrusters lowers propellant mass for satellites."),
    # studies
    ("st01", "study", "2017-05-10", ["0401"], "Active debris removal mission study",
     "The study assessed a mission to remove a large defunct satellite from low earth orbit. "
     "Capture options included a net, a harpoon and a robotic arm. "
     "The robotic arm was selected for the reference design because it allows a controlled re-entry."),
    ("st02", "study", "2018-09-12", ["0405"], "Ocean colour constellation study",
     "The study analysed a constellation carrying imaging spectrometers for ocean colour. "
     "Chlorophyll and plankton maps support fisheries and climate research. "
     "Revisit time and coverage drove the choice of orbit."),
    ("st03", "study", "2019-01-22", ["0403"], "Lunar in-situ resource utilization study",
     "The study compared processes for oxygen production from lunar regolith. "
     "Hydrogen reduction and molten salt electrolysis were traded for power and mass. "
     "Molten salt electrolysis offered the highest oxygen yield per kilogram of regolith."),
    ("st04", "study", "2016-03-15", ["0502", "0406"], "Drought monitoring study",
     "The study defined a service for drought monitoring from soil moisture and precipitation data. "
     "Users in agriculture and water resources management were consulted. "
     "The service combines earth observation with climate model output."),
    ("st05", "study", "2015-07-07", ["0913"], "Electric propulsion platform study",
     "The study investigated an all-electric platform for telecommunication satellites. "
     "Orbit raising with hall thrusters takes several months. "
     "Launch mass savings allow a smaller launcher."),
    ("st06", "study", "2020-10-01", ["1117"], "Space telemedicine study",
     "The study reviewed telemedicine systems used on the International Space Station. "
     "Lessons for remote health care on Earth were identified. "
     "Satellite broadband and data security are key requirements."),
    ("st07", "study", "2021-12-09", ["0806"], "Space traffic management study",
     "The study outlined a European space traffic management framework. "
     "Space surveillance, tracking and collision avoidance services were described. "
     "Data sharing between operators was considered essential."),
    # projects
    ("pr01", "project", "2018-02-01", ["0401"], "ClearSpace-1",
     "ClearSpace-1 will capture a Vega upper stage adapter with four robotic arms and remove it from orbit. "
     "The project is the first active debris removal mission funded by the European Space Agency."),
    ("pr02", "project", "2016-11-11", ["0405"], "Sentinel-3 ocean products",
     "The project develops sea surface temperature and ocean colour products from Sentinel-3. "
     "Products are distributed by EUMETSAT and the Copernicus services."),
    ("pr03", "project", "2020-05-25", ["0403"], "PROSPECT lunar drill",
     "The project builds a drill and a mass spectrometer to search for water ice at the lunar south pole. "
     "The package will fly on a lunar lander."),
    ("pr04", "project", "2019-04-18", ["0909"], "Forest fire service",
     "The project operates a wildfire monitoring service based on thermal infrared data. "
     "Fire maps are delivered to civil protection agencies in Europe."),
    ("pr05", "project", "2017-09-09", ["0913"], "Green propulsion demonstrator",
     "The project qualifies a green propellant thruster for small satellites. "
     "A flight demonstration is planned on a cubesat."),
    ("pr06", "project", "2015-01-30", ["1117"], "Satellite health network",
     "The project connects rural clinics to hospitals through satellite broadband. "
     "Doctors perform remote diagnosis with telemedicine equipment."),
    # papers
    ("pa01", "paper", "2018-06-06", ["0405"], "Marine heatwaves in satellite records",
     "Sea surface temperature records from satellites reveal more frequent marine heatwaves. "
     "The heatwaves affect coral reef ecosystems and fisheries. "
     "El Nino events amplify the anomalies in the Pacific Ocean."),
    ("pa02", "paper", "2019-08-19", ["0406"], "Soil moisture retrieval",
     "Soil moisture is retrieved from microwave radiometer observations at L-band. "
     "The retrieval is validated with in-situ probes across Europe and Africa. "
     "Errors increase over dense forest."),
    ("pa03", "paper", "2020-03-03", ["0401"], "Glacier retreat in the Alps",
     "Glacier retreat in the Alps is measured with synthetic aperture radar interferometry. "
     "Ice loss accelerated after 2003. Meltwater affects water resources downstream."),
    ("pa04", "paper", "2016-12-20", ["0907"], "Air quality from space",
     "Nitrogen dioxide and ozone are monitored from space with a spectrometer. "
     "Air quality improved during the lockdowns of 2020 in Europe and Asia."),
    ("pa05", "paper", "2014-04-14", ["0401"], "Permafrost thaw",
     "Permafrost thaw releases methane and carbon dioxide. "
     "Land surface temperature from satellites tracks the thaw across the Arctic."),
    ("pa06", "paper", "2021-02-02", ["0299"], "Exoplanet transits",
     "Planetary transits observed by a photometer reveal the radius of an exoplanet. "
     "Light curve analysis detects small planets around bright stars."),
    ("pa07", "paper", "2017-10-10", ["0405", "0401"], "Sea level rise",
     "Sea level rise is measured by radar altimeter missions since 1992. "
     "Ice sheet melt in Greenland and Antarctica contributes a growing share of the rise."),
]
