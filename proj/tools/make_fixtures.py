#!/usr/bin/env python3
"""Regenerate the bundled taxonomies and the synthetic evaluation fixtures.

Everything this script writes is deterministic: running it twice yields
byte-identical files. Outputs:

  data/taxonomy_v1.json        eight-class hierarchy
  data/taxonomy_v2.json        eleven-class hierarchy
  data/fixtures/catalog_200.jsonl   200 synthetic servers over every v2 leaf
  data/fixtures/queries_24.jsonl    24 cases, 2+ per v2 top class
  data/fixtures/oracle.script.json  scripted gateway that always routes and
                                    ranks the target correctly
  data/fixtures/mock_servers.json   echo/weather mock fixtures for transport
                                    tests and demos
  data/fixtures/demo_catalog.jsonl  six-server demo catalog (echo included)
  data/fixtures/demo.script.json    scripted gateway for the demo catalog
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)
DATA = os.path.join(ROOT, "data")
FIXTURES = os.path.join(DATA, "fixtures")


def node(node_id, name, definition, children=()):
    return {
        "id": node_id,
        "name": name,
        "definition": definition,
        "children": list(children),
    }


# --------------------------------------------------------------------------
# taxonomy v2 (eleven top-level classes)
# --------------------------------------------------------------------------

TAXONOMY_V2 = [
    node("1", "Search and Information Retrieval",
         "Servers that locate, fetch, and deliver information from external sources "
         "including web search, databases, and external APIs.", [
        node("1.1", "Web Search and Discovery",
             "Search engines and discovery services over public web content, news, "
             "social platforms, and curated directories.", [
            node("1.1.1", "General Web Search",
                 "Broad internet search engines providing web results (e.g. Google, Bing, "
                 "DuckDuckGo, general search APIs)."),
            node("1.1.2", "Academic and Research",
                 "Specialized search for scholarly content including research papers, academic "
                 "databases, scientific repositories, and educational resources."),
            node("1.1.3", "News and Media",
                 "Real-time news aggregation, media monitoring, journalism databases, and "
                 "current events tracking systems."),
            node("1.1.4", "Social Media Discovery",
                 "Platform-specific content discovery across social networks."),
            node("1.1.5", "Specialized Directories",
                 "Professional networks, business directories, industry-specific databases, "
                 "and niche community platforms."),
        ]),
        node("1.2", "Database and Repository Access",
             "Read access to databases, document stores, code hosting, cloud storage, and "
             "third-party service APIs.", [
            node("1.2.1", "Structured Databases",
                 "Direct access to SQL databases, data warehouses, and structured data stores."),
            node("1.2.2", "Document Repositories",
                 "File systems, document management systems, enterprise content management, "
                 "and document libraries."),
            node("1.2.3", "Version Control",
                 "Git repositories, code hosting platforms, source control systems, and "
                 "development collaboration tools."),
            node("1.2.4", "Cloud Storage",
                 "Object storage services, file sharing platforms, cloud-based storage "
                 "systems, and distributed file systems."),
            node("1.2.5", "External API Data Access",
                 "REST API clients, GraphQL clients, service-specific APIs, and third-party "
                 "integration endpoints."),
        ]),
    ]),
    node("2", "Memory and Knowledge Management",
         "Servers that store, organize, retrieve, and manage internal information for "
         "persistence, reuse, and knowledge building.", [
        node("2.1", "Personal Knowledge Systems",
             "Individual note collections, references, and personal libraries.", [
            node("2.1.1", "Note-Taking Platforms",
                 "Digital note-taking systems including Notion, Obsidian, Roam Research, and "
                 "personal note management."),
            node("2.1.2", "Bookmark and Reference Management",
                 "Link organization, reference collection, citation management, and personal "
                 "library systems."),
        ]),
        node("2.2", "Organizational Knowledge Systems",
             "Shared knowledge bases, team documentation, and support content for "
             "organizations.", [
            node("2.2.1", "Enterprise Knowledge Bases",
                 "Corporate wikis, institutional documentation systems, and organizational "
                 "memory platforms."),
            node("2.2.2", "Collaborative Knowledge Platforms",
                 "Shared workspaces, team knowledge systems, and collaborative documentation "
                 "tools."),
            node("2.2.3", "Documentation and Help Systems",
                 "Technical documentation, user guides, help desk knowledge bases, and "
                 "support systems."),
        ]),
        node("2.3", "Memory Persistence",
             "State that outlives a single exchange: dialogue history, preferences, and "
             "accumulated knowledge.", [
            node("2.3.1", "Conversation Memory",
                 "Chat history, interaction logs, session continuity, and dialogue state "
                 "management."),
            node("2.3.2", "Context Preservation",
                 "User preferences, personalization data, and settings management."),
            node("2.3.3", "Learning and Adaptation Systems",
                 "Knowledge accumulation, user behavior learning, and adaptive interfaces."),
        ]),
        node("2.4", "Knowledge Graphs and Semantic Systems",
             "Graph-shaped knowledge: ontologies, linked data, entities and their "
             "relationships.", [
            node("2.4.1", "Semantic Networks",
                 "RDF systems, OWL-based ontologies, linked data platforms, and semantic web "
                 "technologies."),
            node("2.4.2", "Entity and Relationship Systems",
                 "Knowledge graph databases, entity recognition, relationship mapping, and "
                 "graph-based knowledge systems."),
        ]),
    ]),
    node("3", "Simulation and Planning",
         "Servers that model scenarios, predict outcomes, generate strategic plans, and "
         "support decision-making processes.", [
        node("3.1", "Computational Simulation",
             "Numerical, physical, and dynamic-system models run on demand.", [
            node("3.1.1", "Mathematical Modeling",
                 "Numerical simulations, equation solving, computational mathematics, and "
                 "algorithmic modeling."),
            node("3.1.2", "Physical and Scientific Simulations",
                 "Physics engines, material modeling, scientific simulations, and engineering "
                 "analysis."),
            node("3.1.3", "System Dynamics",
                 "Complex system behavior modeling, network simulations, and dynamic system "
                 "analysis."),
        ]),
        node("3.2", "Strategic Planning and Management",
             "Project scheduling, option evaluation, and risk-aware what-if planning.", [
            node("3.2.1", "Project and Task Management",
                 "Task scheduling, resource allocation, project planning tools, and workflow "
                 "management."),
            node("3.2.2", "Decision Support Systems",
                 "Multi-criteria analysis, option evaluation, strategic planning, and business "
                 "intelligence."),
            node("3.2.3", "Scenario and Risk Analysis",
                 "What-if modeling, risk assessment, contingency planning, and strategic "
                 "scenario evaluation."),
        ]),
        node("3.3", "Predictive Analytics",
             "Forecasting, trained-model inference, and statistical analysis services.", [
            node("3.3.1", "Forecasting and Trend Analysis",
                 "Time series prediction, market forecasting, trend identification, and "
                 "predictive modeling."),
            node("3.3.2", "Machine Learning Inference",
                 "Trained model deployment, AI-powered predictions, and intelligent decision "
                 "support."),
            node("3.3.3", "Statistical Analysis",
                 "Hypothesis testing, correlation analysis, data mining, and statistical "
                 "modeling."),
        ]),
    ]),
    node("4", "Navigation and Mapping",
         "Servers that provide spatial awareness, location services, navigation "
         "capabilities, and geographic information systems.", [
        node("4.1", "Geographic Information Systems",
             "Maps, geospatial analysis, geocoding, and place information.", [
            node("4.1.1", "Mapping Services",
                 "Google Maps, OpenStreetMap integrations, cartographic services, and "
                 "geographic visualization."),
            node("4.1.2", "Geospatial Analysis",
                 "GIS operations, spatial queries, geographic data processing, and location "
                 "intelligence."),
            node("4.1.3", "Location and Place Services",
                 "Geocoding, place recognition, address validation, and location-based "
                 "information."),
        ]),
        node("4.2", "Physical Navigation and Routing",
             "Routes, live guidance, and travel conditions for moving through the physical "
             "world.", [
            node("4.2.1", "Route Planning",
                 "Optimal path calculation, multi-modal routing, and travel planning systems."),
            node("4.2.2", "Real-time Navigation",
                 "Turn-by-turn directions, live traffic integration, and dynamic route "
                 "guidance."),
            node("4.2.3", "Traffic and Environmental Conditions",
                 "Real-time traffic data, weather-aware routing, and condition-based "
                 "navigation."),
        ]),
        node("4.3", "Virtual and Digital Navigation",
             "Orientation inside digital spaces: virtual worlds, information structures, and "
             "network topologies.", [
            node("4.3.1", "Digital Environment Mapping",
                 "Virtual world navigation, game environment mapping, and 3D space "
                 "orientation."),
            node("4.3.2", "Information Architecture Navigation",
                 "Website structure exploration, app navigation assistance, and content "
                 "hierarchy mapping."),
            node("4.3.3", "Network and System Topology",
                 "Infrastructure mapping, system architecture exploration, and network "
                 "navigation."),
        ]),
    ]),
    node("5", "Data Extraction and Manipulation",
         "Servers that process, transform, analyze, and manipulate various data types "
         "including text, multimedia, and structured data.", [
        node("5.1", "Text and Document Processing",
             "Language-level work on text and documents: parsing, conversion, and content "
             "understanding.", [
            node("5.1.1", "Natural Language Processing",
                 "Text parsing, language analysis, generation, translation, and linguistic "
                 "operations."),
            node("5.1.2", "Document Processing",
                 "OCR, format conversion, document extraction, and file format manipulation."),
            node("5.1.3", "Content Analysis",
                 "Sentiment analysis, text classification, summarization, and content "
                 "understanding."),
        ]),
        node("5.2", "Structured Data Operations",
             "Transformations, analytics, and CRUD work over structured records.", [
            node("5.2.1", "Data Transformation",
                 "ETL processes, format conversion, data cleaning, and structural data "
                 "manipulation."),
            node("5.2.2", "Analytics and Reporting",
                 "Statistical analysis, data visualization, business intelligence, and "
                 "reporting systems."),
            node("5.2.3", "Database Operations",
                 "CRUD operations, query execution, database management, and data "
                 "persistence."),
        ]),
        node("5.3", "Multimedia Processing",
             "Image, audio, and video analysis, manipulation, and generation.", [
            node("5.3.1", "Image Processing",
                 "Computer vision, image manipulation, image generation, and visual content "
                 "analysis."),
            node("5.3.2", "Audio Processing",
                 "Speech recognition, audio analysis, sound processing, and voice-to-text "
                 "conversion."),
            node("5.3.3", "Video Processing",
                 "Video analysis, content extraction, video editing, and multimedia content "
                 "processing."),
        ]),
        node("5.4", "Web Data Extraction",
             "Harvesting and watching web content: scraping, API collection, and change "
             "detection.", [
            node("5.4.1", "Web Scraping",
                 "HTML parsing, content extraction, web crawling, and automated data "
                 "harvesting."),
            node("5.4.2", "API Data Collection",
                 "Automated data gathering from APIs, bulk data retrieval, and systematic "
                 "data acquisition."),
            node("5.4.3", "Monitoring and Change Detection",
                 "Real-time monitoring, alert systems, and automated change tracking."),
        ]),
    ]),
    node("6", "System and Device Control",
         "Servers that interface with and control external devices, systems, applications, "
         "or IoT endpoints.", [
        node("6.1", "Smart Home and IoT",
             "Household devices, home security, and utility monitoring endpoints.", [
            node("6.1.1", "Home Automation",
                 "Smart devices, environmental control, lighting systems, and household device "
                 "management."),
            node("6.1.2", "Security and Monitoring",
                 "Cameras, alarms, access control, and home security systems."),
            node("6.1.3", "Energy and Utilities Management",
                 "Smart meters, efficiency optimization, utility monitoring, and resource "
                 "management."),
        ]),
        node("6.2", "Enterprise and Infrastructure Systems",
             "Network gear, servers, and industrial process control.", [
            node("6.2.1", "Network Infrastructure",
                 "Router, switch, firewall management, and network device configuration."),
            node("6.2.2", "Server and System Administration",
                 "Remote system management, server operations, and infrastructure control."),
            node("6.2.3", "Industrial and Manufacturing Control",
                 "Industrial IoT, process control, manufacturing systems, and operational "
                 "technology."),
        ]),
        node("6.3", "Computer and Application Control",
             "Driving operating systems, applications, browsers, and personal devices.", [
            node("6.3.1", "Operating System Control",
                 "Desktop automation, system-level operations, OS-specific integrations "
                 "(Windows, macOS, Linux)."),
            node("6.3.2", "Browser and Application Control",
                 "Web browser automation, application scripting, and software control "
                 "interfaces."),
            node("6.3.3", "Mobile and Wearable Devices",
                 "Smartphone integration, device sensor access, wearable technology, and "
                 "mobile device management."),
        ]),
    ]),
    node("7", "Communication and Interaction",
         "Servers that facilitate communication between entities, manage interactions, "
         "handle messaging, and coordinate collaborative activities.", [
        node("7.1", "Messaging and Social Interaction",
             "Chat, email, and social platform interaction channels.", [
            node("7.1.1", "Instant Messaging",
                 "Real-time chat platforms, messaging apps, and communication channels."),
            node("7.1.2", "Email Integration",
                 "Email sending, management, processing, and email automation systems."),
            node("7.1.3", "Social Media Interaction",
                 "Platform posting, social engagement, community management, and social media "
                 "automation."),
        ]),
        node("7.2", "Collaboration and Scheduling",
             "Meetings, calendars, and shared work surfaces for teams.", [
            node("7.2.1", "Video Conferencing",
                 "Meeting platforms, screen sharing, virtual collaboration, and video "
                 "communication tools."),
            node("7.2.2", "Calendar and Scheduling",
                 "Meeting scheduling, calendar management, appointment booking, and time "
                 "coordination."),
            node("7.2.3", "Shared Workspaces",
                 "Collaborative editing, team coordination, document sharing, and group "
                 "productivity tools."),
        ]),
        node("7.3", "Workflow and Process Automation",
             "Process orchestration, alerting, and event plumbing between services.", [
            node("7.3.1", "Workflow Automation",
                 "Process orchestration, approval systems, business process automation, and "
                 "workflow management."),
            node("7.3.2", "Event-based Alerts",
                 "Push notifications, system alerts, event broadcasting, and notification "
                 "management."),
            node("7.3.3", "Event and Integration Management",
                 "Webhook delivery, event streaming, system integration, and inter-service "
                 "communication."),
        ]),
    ]),
    node("8", "Specialized Domains",
         "Domain-specific servers tailored for particular industries, activities, or "
         "specialized use cases.", [
        node("8.1", "Financial Services",
             "Money management, trading, payments, and market data.", [
            node("8.1.1", "Personal and Business Finance",
                 "Budget planning, expense tracking, financial health analysis, accounting "
                 "integration."),
            node("8.1.2", "Trading and Investments",
                 "Stock trading, crypto, portfolio management, and market research."),
            node("8.1.3", "Payment Processing",
                 "Payment gateways, money transfers, digital wallets, and payment services."),
            node("8.1.4", "Market Data and Analytics",
                 "Financial data feeds, economic indicators, and financial research."),
        ]),
        node("8.2", "Entertainment and Gaming",
             "Games, game development, and media consumption platforms.", [
            node("8.2.1", "Gaming Platforms",
                 "Game APIs, player statistics, platform integrations."),
            node("8.2.2", "Game Development",
                 "Game engines, development frameworks, and tools."),
            node("8.2.3", "Media and Entertainment",
                 "Streaming platforms, music, podcasts, and content recommendation."),
        ]),
        node("8.9", "Other Specialized Domains",
             "Domains like Shopping, Food, Health, or Travel not covered above."),
    ]),
    node("9", "Developer Tools and Programming",
         "Servers that assist software development, provide programming utilities, code "
         "management, and development workflow support.", [
        node("9.1", "Code Development and Management",
             "Writing, analyzing, and managing code and its toolchains.", [
            node("9.1.1", "Code Generation and AI Assistance",
                 "Automated programming, code completion."),
            node("9.1.2", "Code Analysis and Quality",
                 "Review, testing frameworks, quality tools."),
            node("9.1.3", "Development Environment",
                 "IDE integrations, toolchains."),
            node("9.1.4", "API Development and Testing",
                 "API design, documentation, and testing."),
            node("9.1.5", "Development Utilities",
                 "Build tools, package and dependency management."),
        ]),
        node("9.2", "Development Operations",
             "Shipping and running software: pipelines, provisioning, monitoring, "
             "integration.", [
            node("9.2.1", "Deployment and CI/CD",
                 "Integration pipelines, deployment automation."),
            node("9.2.2", "Infrastructure as Code",
                 "Provisioning, configuration automation."),
            node("9.2.3", "Monitoring and Debugging",
                 "Application monitoring, performance analysis."),
            node("9.2.4", "Integration and Connectivity",
                 "Middleware, service mesh, integration platforms."),
        ]),
    ]),
    node("10", "Multi-Domain Orchestration",
         "Servers that aggregate multiple tools, coordinate complex workflows across "
         "domains, or provide meta-functionality spanning multiple categories.", [
        node("10.1", "Integration and Orchestration",
             "Hubs that wire many services together and drive processes across them.", [
            node("10.1.1", "Multi-Service Integration",
                 "Zapier-like tools, API gateways, cross-platform workflows."),
            node("10.1.2", "Workflow and Process Orchestration",
                 "Enterprise workflow systems, BPM, approval workflows."),
        ]),
        node("10.2", "Cross-Domain and Platform Tools",
             "Vendor suites and applications that span several primary categories.", [
            node("10.2.1", "Platform-Specific Suites",
                 "Vendor ecosystems, integrated toolsets."),
            node("10.2.2", "Domain-Crossing Applications",
                 "Servers spanning multiple primary categories."),
        ]),
    ]),
    node("11", "Other",
         "Servers that do not fall into any of the available categories."),
]

# --------------------------------------------------------------------------
# taxonomy v1 (eight top-level classes)
# --------------------------------------------------------------------------

TAXONOMY_V1 = [
    node("1", "Search and Information Retrieval",
         "Servers that locate, fetch, and deliver information from various sources.", [
        node("1.1", "Web Search and Discovery",
             "Search engines and discovery services over public web content.", [
            node("1.1.1", "General Web Search",
                 "Broad internet search engines (Google, Bing, DuckDuckGo)."),
            node("1.1.2", "Academic and Research",
                 "Scholarly databases, research repositories."),
            node("1.1.3", "News and Media", "Real-time news, media monitoring."),
            node("1.1.4", "Social Media Search", "Platform-specific content discovery."),
            node("1.1.5", "Specialized Directories",
                 "Professional networks, business directories."),
        ]),
        node("1.2", "Database and Repository Access",
             "Read access to databases, documents, code, and storage services.", [
            node("1.2.1", "Structured Databases", "SQL databases, data warehouses."),
            node("1.2.2", "Document Repositories",
                 "File systems, document management systems."),
            node("1.2.3", "Version Control", "Git repositories, code hosting platforms."),
            node("1.2.4", "Cloud Storage", "Object storage, file sharing services."),
            node("1.2.5", "External API Data Access",
                 "REST API Clients, GraphQL Clients, Service-Specific APIs."),
        ]),
    ]),
    node("2", "Memory and Knowledge Management",
         "Servers that store, organize, retrieve, and manage information for persistence "
         "and reuse.", [
        node("2.1", "Personal Knowledge Systems",
             "Individual notes, wikis, and bookmarks.", [
            node("2.1.1", "Note-Taking Platforms", "Notion, Obsidian, Roam Research."),
            node("2.1.2", "Personal Wikis", "Individual knowledge bases."),
            node("2.1.3", "Bookmark Management", "Link organization and retrieval."),
        ]),
        node("2.2", "Organizational Knowledge",
             "Shared knowledge bases and documentation for teams.", [
            node("2.2.1", "Enterprise Knowledge Bases",
                 "Corporate wikis, documentation systems."),
            node("2.2.2", "Collaborative Platforms", "Shared workspaces, team knowledge."),
            node("2.2.3", "Documentation Systems",
                 "Technical documentation, help systems."),
        ]),
        node("2.3", "Memory Persistence",
             "Conversation history, session state, and adaptive knowledge.", [
            node("2.3.1", "Conversation Memory", "Chat history, interaction logs."),
            node("2.3.2", "Context Preservation", "Session state, user preferences."),
            node("2.3.3", "Learning Systems", "Adaptive knowledge accumulation."),
        ]),
        node("2.4", "Knowledge Graphs and Ontologies",
             "Semantic networks, entity graphs, and controlled vocabularies.", [
            node("2.4.1", "Semantic Networks", "RDF, OWL-based systems."),
            node("2.4.2", "Entity Relationship Systems", "Knowledge graph databases."),
            node("2.4.3", "Taxonomy Management",
                 "Classification systems, controlled vocabularies."),
        ]),
    ]),
    node("3", "Simulation and Planning",
         "Servers that model scenarios, predict outcomes, and generate strategic plans.", [
        node("3.1", "Computational Simulation",
             "Mathematical, physical, and system-dynamics modeling.", [
            node("3.1.1", "Mathematical Modeling",
                 "Numerical simulations, equation solving."),
            node("3.1.2", "Physical Simulations", "Physics engines, material modeling."),
            node("3.1.3", "System Dynamics", "Complex system behavior modeling."),
        ]),
        node("3.2", "Strategic Planning",
             "Project planning, decision support, and scenario analysis.", [
            node("3.2.1", "Project Planning", "Task scheduling, resource allocation."),
            node("3.2.2", "Decision Support", "Multi-criteria analysis, option evaluation."),
            node("3.2.3", "Scenario Analysis", "What-if modeling, risk assessment."),
        ]),
        node("3.3", "Predictive Analytics",
             "Forecasting, model inference, and statistical analysis.", [
            node("3.3.1", "Forecasting", "Time series prediction, trend analysis."),
            node("3.3.2", "Machine Learning Models", "Trained model inference."),
            node("3.3.3", "Statistical Analysis",
                 "Hypothesis testing, correlation analysis."),
        ]),
    ]),
    node("4", "Navigation and Mapping",
         "Servers that provide spatial awareness, location services, and navigation "
         "capabilities.", [
        node("4.1", "Geographic Information Systems",
             "Maps, geospatial analysis, and location intelligence.", [
            node("4.1.1", "Mapping Services", "Google Maps, OpenStreetMap integrations."),
            node("4.1.2", "Geospatial Analysis", "GIS operations, spatial queries."),
            node("4.1.3", "Location Intelligence", "Place recognition, geocoding."),
        ]),
        node("4.2", "Navigation and Routing",
             "Route planning, live navigation, and traffic conditions.", [
            node("4.2.1", "Route Planning", "Optimal path calculation."),
            node("4.2.2", "Real-time Navigation", "Turn-by-turn directions."),
            node("4.2.3", "Traffic and Conditions", "Dynamic routing with live data."),
        ]),
        node("4.3", "Virtual Space Navigation",
             "Navigation through digital environments and system structures.", [
            node("4.3.1", "Digital Environment Mapping", "Virtual world navigation."),
            node("4.3.2", "Information Architecture",
                 "Website/app structure navigation."),
            node("4.3.3", "Network Topology", "System architecture exploration."),
        ]),
    ]),
    node("5", "Data Extraction and Manipulation",
         "Servers that process, transform, analyze, and manipulate various data types.", [
        node("5.1", "Text Processing",
             "Language processing, document handling, and content analysis.", [
            node("5.1.1", "Natural Language Processing", "Parsing, analysis, generation."),
            node("5.1.2", "Document Processing", "OCR, format conversion, extraction."),
            node("5.1.3", "Content Analysis", "Sentiment, classification, summarization."),
        ]),
        node("5.2", "Structured Data Operations",
             "ETL, analytics, and database operations over structured data.", [
            node("5.2.1", "Data Transformation", "ETL processes, format conversion."),
            node("5.2.2", "Analytics and Reporting",
                 "Statistical analysis, visualization."),
            node("5.2.3", "Database Operations", "CRUD operations, query execution."),
        ]),
        node("5.3", "Multimedia Processing",
             "Image, audio, and video processing.", [
            node("5.3.1", "Image Processing",
                 "Computer vision, image manipulation, image generation."),
            node("5.3.2", "Audio Processing",
                 "Speech recognition, speech to text, audio analysis."),
            node("5.3.3", "Video Processing", "Video analysis, content extraction."),
        ]),
        node("5.4", "Web Data Extraction",
             "Scraping, API harvesting, and web monitoring.", [
            node("5.4.1", "Web Scraping", "HTML parsing, content extraction."),
            node("5.4.2", "API Data Harvesting", "Automated data collection."),
            node("5.4.3", "Real-time Monitoring", "Change detection, alert systems."),
        ]),
    ]),
    node("6", "Remote Device Control",
         "Servers that interface with and control external devices, systems, or IoT "
         "endpoints.", [
        node("6.1", "Smart Home and IoT",
             "Home automation, security, and energy endpoints.", [
            node("6.1.1", "Home Automation", "Smart devices, environmental control."),
            node("6.1.2", "Security Systems", "Cameras, alarms, access control."),
            node("6.1.3", "Energy Management", "Smart meters, efficiency optimization."),
        ]),
        node("6.2", "Industrial and Enterprise Systems",
             "Network, server, and manufacturing control.", [
            node("6.2.1", "Network Infrastructure",
                 "Router, switch, firewall management."),
            node("6.2.2", "Server Administration", "Remote system management."),
            node("6.2.3", "Manufacturing Control", "Industrial IoT, process control."),
        ]),
        node("6.3", "Mobile and Wearable Devices",
             "Phones, wearables, and location-based device services.", [
            node("6.3.1", "Smartphone Integration", "Device control, sensor access."),
            node("6.3.2", "Wearable Technology", "Fitness trackers, smartwatches."),
            node("6.3.3", "Location-based Services", "GPS, proximity systems."),
        ]),
    ]),
    node("7", "Communication and Interaction",
         "Servers that facilitate communication between entities, manage interactions, and "
         "handle messaging.", [
        node("7.1", "Messaging and Chat",
             "Chat, email, and social messaging integration.", [
            node("7.1.1", "Instant Messaging", "Real-time chat platforms."),
            node("7.1.2", "Email Integration", "Email sending, management, processing."),
            node("7.1.3", "Social Media Interaction", "Platform posting, engagement."),
        ]),
        node("7.2", "Collaboration Tools",
             "Meetings, shared workspaces, and workflow automation.", [
            node("7.2.1", "Video Conferencing", "Meeting platforms, screen sharing."),
            node("7.2.2", "Shared Workspaces",
                 "Collaborative editing, project management."),
            node("7.2.3", "Workflow Automation",
                 "Process orchestration, approval systems."),
        ]),
        node("7.3", "Notification and Alerting",
             "Push, monitoring, and event broadcast channels.", [
            node("7.3.1", "Push Notifications", "Mobile, desktop alerts."),
            node("7.3.2", "Monitoring Alerts", "System health, threshold notifications."),
            node("7.3.3", "Event Broadcasting", "Webhook delivery, event streaming."),
        ]),
    ]),
    node("8", "Multi-Domain Orchestration",
         "Servers that aggregate multiple tools, coordinate complex workflows, or provide "
         "meta-functionality across domains.", [
        node("8.1", "Tool Aggregators",
             "Hubs, orchestrators, and gateways over many services.", [
            node("8.1.1", "Multi-Service Hubs", "Zapier-like integrations."),
            node("8.1.2", "Workflow Orchestrators", "Complex process automation."),
            node("8.1.3", "API Gateways", "Service mesh, API management."),
        ]),
        node("8.2", "Meta-Programming Interfaces",
             "Code generation, system integration, and configuration management.", [
            node("8.2.1", "Code Generation", "Automated programming assistance."),
            node("8.2.2", "System Integration", "Cross-platform connectivity."),
            node("8.2.3", "Configuration Management", "System setup, deployment."),
        ]),
        node("8.3", "Hybrid Functionality Servers",
             "Multi-tool suites and adaptive cross-domain servers.", [
            node("8.3.1", "Platform-Specific Suites",
                 "Single-provider multi-tool servers."),
            node("8.3.2", "Domain-Crossing Tools",
                 "Servers spanning multiple primary categories."),
            node("8.3.3", "Adaptive Interfaces", "Context-sensitive tool selection."),
        ]),
    ]),
]


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, ensure_ascii=False)
        handle.write("\n")


def iter_leaves(nodes, out):
    for entry in nodes:
        if entry["children"]:
            iter_leaves(entry["children"], out)
        else:
            out.append(entry)
    return out


# --------------------------------------------------------------------------
# synthetic 200-server catalog over taxonomy v2
# --------------------------------------------------------------------------

FEATURE_SENTENCES = [
    "Responses include structured payloads with stable field names so downstream steps "
    "can parse them without guesswork.",
    "Requests are idempotent and rate-limited; repeated calls with the same arguments "
    "return cached results within a five minute window.",
    "All operations accept an optional verbosity flag that expands the result with "
    "provenance metadata and timing details.",
    "The server batches expensive backend work and streams progress updates so long "
    "operations stay observable from the agent loop.",
    "Authentication is handled out of band; tools never ask the model for credentials "
    "and redact secrets from every response.",
    "Each tool validates its arguments strictly and returns actionable error messages "
    "instead of partial results.",
]

OPS_SENTENCES = [
    "Typical usage starts with a narrow lookup, then widens only when the first call "
    "comes back empty.",
    "Results are capped at fifty items per call; pagination cursors keep larger result "
    "sets reachable.",
    "The service keeps no per-conversation state, so calls can be retried or reordered "
    "freely.",
    "Outputs are plain JSON with ISO-8601 timestamps and UTF-8 text throughout.",
    "Latency is dominated by the upstream provider; budget roughly a second per call.",
]

PARAM_POOL = [
    ("query", "string", "free-text search or task phrase the backend should act on"),
    ("limit", "integer", "maximum number of items to return, defaults to 10"),
    ("target", "string", "identifier of the object the operation applies to"),
    ("format", "string", "output shape: summary, full, or raw"),
    ("region", "string", "geographic or logical region scoping the request"),
    ("start", "string", "ISO-8601 start of the time window under consideration"),
    ("end", "string", "ISO-8601 end of the time window under consideration"),
    ("filter", "string", "expression narrowing results to matching records"),
    ("dry_run", "boolean", "validate the request without performing side effects"),
    ("depth", "integer", "how many levels of nested detail to include"),
]

TOOL_VERBS = ["lookup", "run", "report", "inspect", "submit"]


def slugify(text):
    out = []
    for ch in text.lower():
        if ch.isalnum():
            out.append(ch)
        elif out and out[-1] != "_":
            out.append("_")
    return "".join(out).strip("_")


def build_tool(leaf, server_index, tool_index):
    stem = slugify(leaf["name"])
    verb = TOOL_VERBS[(server_index + tool_index) % len(TOOL_VERBS)]
    name = f"{verb}_{stem}"[:60]
    description = (
        f"{verb.capitalize()} operation for {leaf['name'].lower()} workloads. "
        f"{leaf['definition']} "
        f"{FEATURE_SENTENCES[(server_index * 3 + tool_index) % len(FEATURE_SENTENCES)]}"
    )
    params = []
    required = []
    for k in range(3):
        pname, ptype, pdesc = PARAM_POOL[(server_index + tool_index * 2 + k) % len(PARAM_POOL)]
        if pname in [p[0] for p in params]:
            continue
        params.append((pname, ptype, pdesc))
        if k == 0:
            required.append(pname)
    schema = {
        "type": "object",
        "properties": {
            pname: {"type": ptype, "description": pdesc} for pname, ptype, pdesc in params
        },
        "required": required,
    }
    return {"name": name, "description": description, "input_schema": schema}


VARIANTS = ["Alpha", "Beta", "Gamma"]


def build_server(leaf, top_name, variant_index, server_index):
    variant = VARIANTS[variant_index]
    server_id = "srv-" + leaf["id"].replace(".", "-") + "-" + variant.lower()
    name = f"{leaf['name']} {variant}"
    description = (
        f"{name} is an MCP server for {leaf['name'].lower()} inside the {top_name.lower()} "
        f"space. {leaf['definition']} "
        f"{FEATURE_SENTENCES[server_index % len(FEATURE_SENTENCES)]} "
        f"{OPS_SENTENCES[server_index % len(OPS_SENTENCES)]}"
    )
    tool_count = 3 + (server_index % 2)
    tools = [build_tool(leaf, server_index, t) for t in range(tool_count)]
    secondary = []
    if server_index % 5 == 0:
        secondary = ["5.1.1" if leaf["id"] != "5.1.1" else "1.1.1"]
    entry = {
        "server_id": server_id,
        "name": name,
        "description": description,
        "tools": tools,
        "primary_category": leaf["id"],
        "secondary_categories": secondary,
        "endpoint": {"kind": "in_process", "locator": server_id},
    }
    if server_index % 7 == 0:
        entry["tags"] = {"data_type": "text", "provider": "custom"}
    return entry


def top_level_name(roots, leaf_id):
    top = leaf_id.split(".")[0]
    for root in roots:
        if root["id"] == top:
            return root["name"]
    raise KeyError(leaf_id)


def build_catalog(roots):
    leaves = iter_leaves(roots, [])
    servers = []
    index = 0
    for leaf in leaves:
        for variant in range(2):
            servers.append(build_server(leaf, top_level_name(roots, leaf["id"]), variant,
                                        index))
            index += 1
    # top up to 200 with third variants over the first leaves
    extra = 0
    while len(servers) < 200:
        leaf = leaves[extra]
        servers.append(build_server(leaf, top_level_name(roots, leaf["id"]), 2, index))
        index += 1
        extra += 1
    return servers


# --------------------------------------------------------------------------
# 24-case query dataset (two per top class, plus two extra)
# --------------------------------------------------------------------------

QUERY_SPECS = [
    ("case-01", "1.1.1",
     "Search the public web for the three most cited overviews of container networking "
     "published since 2023 and list their titles."),
    ("case-02", "1.2.3",
     "Look up the commit history of the repository tagged inventory-sync and tell me who "
     "last touched the reconciliation module."),
    ("case-03", "2.1.1",
     "Open my personal notes workspace and pull the outline I drafted about onboarding "
     "checklists for new vendors."),
    ("case-04", "2.4.2",
     "Query the knowledge graph for every entity connected to the Meridian project and "
     "summarize the relationship types."),
    ("case-05", "3.1.1",
     "Solve the system of differential equations describing tank drainage with inflow 3 "
     "liters per minute and report equilibrium levels."),
    ("case-06", "3.3.1",
     "Forecast weekly demand for electric scooter rentals in the harbor district for the "
     "next two months using the historical series."),
    ("case-07", "4.1.3",
     "Geocode the address 1400 Cedar Hollow Lane and confirm which municipal district it "
     "falls inside."),
    ("case-08", "4.2.1",
     "Plan the fastest cycling route from the botanical garden to the central rail "
     "station avoiding the riverside construction."),
    ("case-09", "5.1.2",
     "Run OCR over the scanned procurement contract I uploaded yesterday and extract the "
     "payment schedule table."),
    ("case-10", "5.3.2",
     "Transcribe the attached stakeholder call recording and flag every segment where "
     "budget overruns are discussed."),
    ("case-11", "6.1.1",
     "Set the living room thermostat to 21 degrees and dim the hallway lights to thirty "
     "percent for the evening."),
    ("case-12", "6.3.2",
     "Drive the staging browser session to the checkout page and capture a screenshot of "
     "the payment form validation error."),
    ("case-13", "7.1.2",
     "Send an email to the facilities list announcing that the parking garage closes for "
     "resurfacing next Thursday."),
    ("case-14", "7.2.2",
     "Find a 45 minute slot next week when both product leads are free and book a "
     "roadmap sync in the main calendar."),
    ("case-15", "8.1.2",
     "Check my brokerage portfolio and report the current allocation split between "
     "technology equities and bonds."),
    ("case-16", "8.2.3",
     "Queue up a relaxing jazz playlist for the dinner party and start playback on the "
     "living room speakers."),
    ("case-17", "9.1.2",
     "Run static analysis on the payments service branch and summarize any new warnings "
     "compared with the main branch."),
    ("case-18", "9.2.1",
     "Trigger the staging deployment pipeline for build 4821 and report whether the "
     "smoke stage passes."),
    ("case-19", "10.1.1",
     "Wire the support inbox to the ticketing system so new messages labeled urgent "
     "create tickets automatically."),
    ("case-20", "10.2.1",
     "Use the workspace suite to create a shared folder for the audit, seed it with the "
     "quarterly ledgers, and grant the auditors access."),
    ("case-21", "11",
     "Handle this odd request the usual integrations cannot: register our booth for the "
     "regional maker fair and confirm the stall number."),
    ("case-22", "1.1.3",
     "Scan this morning's technology news wires and summarize coverage about the chip "
     "export rules announced overnight."),
    ("case-23", "5.4.1",
     "Scrape the municipal tender portal and extract every open call that mentions "
     "road maintenance, with closing dates."),
    ("case-24", "11",
     "Coordinate the community garden raffle: collect the prize list from the shared "
     "sheet and draw three winners fairly."),
]


def build_queries(catalog):
    by_category = {}
    for entry in catalog:
        by_category.setdefault(entry["primary_category"], []).append(entry)
    cases = []
    for case_id, category, query in QUERY_SPECS:
        target = by_category[category][0]
        cases.append({
            "case_id": case_id,
            "query": query,
            "target_server_id": target["server_id"],
            "target_category": category,
        })
    return cases


def build_oracle_script(cases, catalog):
    by_id = {entry["server_id"]: entry for entry in catalog}
    rules = []
    for case in cases:
        target = by_id[case["target_server_id"]]
        first_tool = target["tools"][0]["name"]
        rules.append({
            "match": "Query: " + case["query"],
            "reply": case["target_category"],
        })
        rules.append({
            "match": case["query"],
            "reply": {"tool_calls": [{
                "server_id": target["server_id"],
                "tool_name": first_tool,
                "arguments": {"query": "as requested"},
            }]},
        })
        rules.append({
            "match": case["query"],
            "reply": "done: " + case["case_id"],
        })
    return {"rules": rules}


# --------------------------------------------------------------------------
# demo fixtures (echo server, weather server)
# --------------------------------------------------------------------------

MOCK_SERVERS = {
    "servers": [
        {
            "server_id": "echo-server",
            "tools": [
                {
                    "name": "echo",
                    "description": "Echoes the text argument back unchanged.",
                    "input_schema": {
                        "type": "object",
                        "properties": {
                            "text": {"type": "string", "description": "text to echo"}
                        },
                        "required": ["text"],
                    },
                    "canned_replies": [{"reply": {"echo_arg": "text"}}],
                }
            ],
        },
        {
            "server_id": "weather-server",
            "tools": [
                {
                    "name": "current_weather",
                    "description": "Current conditions for a city.",
                    "input_schema": {
                        "type": "object",
                        "properties": {
                            "city": {"type": "string", "description": "city name"}
                        },
                        "required": ["city"],
                    },
                    "canned_replies": [
                        {
                            "match_args": {"city": "Reykjavik"},
                            "reply": {"json": {"city": "Reykjavik", "temp_c": 4,
                                               "conditions": "sleet"}},
                        },
                        {"reply": {"json": {"temp_c": 18, "conditions": "clear"}}},
                    ],
                },
                {
                    "name": "forecast",
                    "description": "Three day forecast for a city.",
                    "input_schema": {
                        "type": "object",
                        "properties": {
                            "city": {"type": "string", "description": "city name"}
                        },
                        "required": ["city"],
                    },
                    "canned_replies": [
                        {"reply": {"json": {"days": ["rain", "rain", "sun"]}}}
                    ],
                },
            ],
        },
    ]
}

DEMO_CATALOG = [
    {
        "server_id": "echo-server",
        "name": "Echo Utility",
        "description": "Repeats text back; a minimal connectivity check for agent "
                       "pipelines and transport debugging.",
        "tools": [
            {
                "name": "echo",
                "description": "Echoes the text argument back unchanged.",
                "input_schema": {
                    "type": "object",
                    "properties": {"text": {"type": "string", "description": "text to echo"}},
                    "required": ["text"],
                },
            }
        ],
        "primary_category": "9.1.4",
        "secondary_categories": [],
        "endpoint": {"kind": "in_process", "locator": "echo-server"},
    },
    {
        "server_id": "weather-server",
        "name": "Weather Desk",
        "description": "Current conditions and short-range forecasts for cities "
                       "worldwide, backed by canned demo data.",
        "tools": [
            {
                "name": "current_weather",
                "description": "Current conditions for a city.",
                "input_schema": {
                    "type": "object",
                    "properties": {"city": {"type": "string", "description": "city name"}},
                    "required": ["city"],
                },
            },
            {
                "name": "forecast",
                "description": "Three day forecast for a city.",
                "input_schema": {
                    "type": "object",
                    "properties": {"city": {"type": "string", "description": "city name"}},
                    "required": ["city"],
                },
            },
        ],
        "primary_category": "4.2.3",
        "secondary_categories": [],
        "endpoint": {"kind": "in_process", "locator": "weather-server"},
    },
    {
        "server_id": "notes-vault",
        "name": "Notes Vault",
        "description": "Personal note search and retrieval over a private markdown "
                       "vault; read-only in this demo build.",
        "tools": [
            {
                "name": "search_notes",
                "description": "Full-text search over the note vault.",
                "input_schema": {
                    "type": "object",
                    "properties": {"query": {"type": "string", "description": "search terms"}},
                    "required": ["query"],
                },
            }
        ],
        "primary_category": "2.1.1",
        "secondary_categories": ["1.1.1"],
        "endpoint": {"kind": "in_process", "locator": "notes-vault"},
    },
    {
        "server_id": "route-scout",
        "name": "Route Scout",
        "description": "Street-level route planning with mode-aware costs for walking, "
                       "cycling, and driving.",
        "tools": [
            {
                "name": "plan_route",
                "description": "Plan a route between two places.",
                "input_schema": {
                    "type": "object",
                    "properties": {
                        "from": {"type": "string", "description": "origin"},
                        "to": {"type": "string", "description": "destination"},
                    },
                    "required": ["from", "to"],
                },
            }
        ],
        "primary_category": "4.2.1",
        "secondary_categories": [],
        "endpoint": {"kind": "in_process", "locator": "route-scout"},
    },
    {
        "server_id": "ledger-lens",
        "name": "Ledger Lens",
        "description": "Budget summaries and expense breakdowns over linked accounts; "
                       "catalog-only in this demo (no live endpoint).",
        "tools": [
            {
                "name": "summarize_spend",
                "description": "Summarize spending for a period.",
                "input_schema": {
                    "type": "object",
                    "properties": {"month": {"type": "string", "description": "YYYY-MM"}},
                    "required": ["month"],
                },
            }
        ],
        "primary_category": "8.1.1",
        "secondary_categories": [],
    },
    {
        "server_id": "mail-courier",
        "name": "Mail Courier",
        "description": "Outbound email composition and delivery with template support "
                       "and recipient validation.",
        "tools": [
            {
                "name": "send_email",
                "description": "Send an email to a recipient list.",
                "input_schema": {
                    "type": "object",
                    "properties": {
                        "to": {"type": "string", "description": "recipient address"},
                        "subject": {"type": "string", "description": "subject line"},
                        "body": {"type": "string", "description": "message body"},
                    },
                    "required": ["to", "subject"],
                },
            }
        ],
        "primary_category": "7.1.2",
        "secondary_categories": [],
        "endpoint": {"kind": "in_process", "locator": "mail-courier"},
    },
]

DEMO_SCRIPT = {
    "rules": [
        {
            "match": "Query: echo back the phrase",
            "reply": "9.1.4",
        },
        {
            "match": "echo back the phrase",
            "reply": {"tool_calls": [{
                "server_id": "echo-server",
                "tool_name": "echo",
                "arguments": {"text": "transport check"},
            }]},
        },
        {
            "match": "echo back the phrase",
            "reply": "The echo server returned: transport check",
        },
        {
            "match": "Query: what is the weather",
            "reply": "4.2.3",
        },
        {
            "match": "what is the weather",
            "reply": {"tool_calls": [{
                "server_id": "weather-server",
                "tool_name": "current_weather",
                "arguments": {"city": "Reykjavik"},
            }]},
        },
        {
            "match": "what is the weather",
            "reply": "Reykjavik is 4C with sleet.",
        },
        {"fallback": True, "reply": "I cannot help with that in the demo script."},
    ]
}


def assert_queries_distinct(cases):
    for a in cases:
        for b in cases:
            if a["case_id"] != b["case_id"] and a["query"] in b["query"]:
                raise AssertionError(
                    f"query of {a['case_id']} is a substring of {b['case_id']}")


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    write_json(os.path.join(DATA, "taxonomy_v2.json"),
               {"version": "v2", "roots": TAXONOMY_V2})
    write_json(os.path.join(DATA, "taxonomy_v1.json"),
               {"version": "v1", "roots": TAXONOMY_V1})

    catalog = build_catalog(TAXONOMY_V2)
    with open(os.path.join(FIXTURES, "catalog_200.jsonl"), "w", encoding="utf-8") as handle:
        for entry in catalog:
            handle.write(json.dumps(entry, ensure_ascii=False) + "\n")

    cases = build_queries(catalog)
    assert_queries_distinct(cases)
    with open(os.path.join(FIXTURES, "queries_24.jsonl"), "w", encoding="utf-8") as handle:
        for case in cases:
            handle.write(json.dumps(case, ensure_ascii=False) + "\n")

    write_json(os.path.join(FIXTURES, "oracle.script.json"),
               build_oracle_script(cases, catalog))
    write_json(os.path.join(FIXTURES, "mock_servers.json"), MOCK_SERVERS)
    with open(os.path.join(FIXTURES, "demo_catalog.jsonl"), "w", encoding="utf-8") as handle:
        for entry in DEMO_CATALOG:
            handle.write(json.dumps(entry, ensure_ascii=False) + "\n")
    write_json(os.path.join(FIXTURES, "demo.script.json"), DEMO_SCRIPT)

    leaves = iter_leaves(TAXONOMY_V2, [])
    print(f"taxonomy v2: {len(leaves)} leaves; catalog: {len(catalog)} servers; "
          f"queries: {len(cases)}")


if __name__ == "__main__":
    main()
